#include "finsp/scheme.hpp"

namespace finsp {

namespace {

Gluing classify_edge(const Space& X, int p, int q) {
  Gluing g;
  g.from = q;
  g.to = p;
  const PoleSet& tp = X.poles(p);
  const PoleSet& tq = X.poles(q);
  if (tp == tq) {
    g.cls = Gluing::Class::identity;
  } else if (tq.all) {
    g.cls = Gluing::Class::flat_mono_not_open;
  } else {
    g.cls = Gluing::Class::open_immersion;
    g.removed = tq.minus(tp);
  }
  return g;
}

}  // namespace

PredicateVerdict has_open_restrictions(const Space& X) {
  if (X.universe.kind != UniverseKind::rational)
    throw input_error("open-restrictions applies to the rational universe only");
  PredicateVerdict v;
  for (auto [p, q] : X.poset.hasse()) {
    Gluing g = classify_edge(X, p, q);
    std::string what = "edge " + X.poset.label(p) + " <= " + X.poset.label(q);
    if (g.cls == Gluing::Class::flat_mono_not_open)
      v.obligations.push_back({what, false, "finite pole set jumps to the full function field"});
    else
      v.obligations.push_back({what, true, g.class_string()});
  }
  for (const Obligation& o : v.obligations)
    if (!o.ok) {
      v.v = PredicateVerdict::V::no;
      v.counterexample = o.what + ": " + o.evidence;
      break;
    }
  return v;
}

SchemeDescriptor spec_export(const Space& X) {
  if (X.universe.kind != UniverseKind::rational)
    throw input_error("spec-export applies to the rational universe only");
  X.validate();
  SchemeDescriptor d;
  for (std::size_t t = 0; t < X.poset.size(); ++t) d.charts.push_back(X.poles(static_cast<int>(t)));
  for (auto [p, q] : X.poset.hasse()) d.gluings.push_back(classify_edge(X, p, q));
  d.is_scheme = has_open_restrictions(X).is_true();
  std::vector<std::vector<int>> comps = components(OpenSet::whole(X.poset));
  for (const std::vector<int>& c : comps) d.global_sections.push_back(section_poles(X, c));
  PredicateVerdict aff = is_affine(X);
  if (aff.is_true() && comps.size() == 1) {
    d.affine_collapse = true;
    d.collapse_ring = d.global_sections.front();
  }
  return d;
}

RefinementWitness refinement_equivalence(const Morphism& f) {
  PredicateVerdict we = is_affine_morphism(f, AffineMorphismMode::weak_equivalence);
  if (!we.is_true())
    throw input_error("refinement equivalence needs a weak equivalence: " +
                      (we.is_false() ? we.counterexample : std::string("verdict unknown")));
  RefinementWitness w;
  const Space& Y = f.target;
  for (std::size_t yi = 0; yi < Y.poset.size(); ++yi) {
    int y = static_cast<int>(yi);
    OpenSet pre = f.preimage(minimal_open(Y.poset, y));
    RefinementWitness::PerPoint pp;
    pp.target_point = y;
    pp.preimage_points = pre.members;
    std::vector<std::vector<int>> comps = components(pre);
    if (comps.size() != 1)
      throw std::logic_error("refinement witness: disconnected preimage after weak equivalence");
    PoleSet sec = section_poles(f.source, comps[0]);
    if (!(sec == Y.poles(y)))
      throw std::logic_error("refinement witness: sections do not match the target chart");
    pp.chart = sec;
    w.identifications.push_back(std::move(pp));
  }
  return w;
}

}  // namespace finsp
