#include "support/generators.hpp"

#include <algorithm>

namespace finsp::testsupport {

std::string fixture_path(const std::string& name) {
  return std::string(FINSP_FIXTURES) + "/" + name;
}

Space load_fixture(const std::string& name) { return load_space(fixture_path(name)); }

SheafDescriptor load_fixture_sheaf(const std::string& name, const Space& X) {
  return load_sheaf(fixture_path(name), X);
}

Morphism load_fixture_morphism(const std::string& name) {
  return load_morphism(fixture_path(name));
}

FinitePoset random_poset(Rng& rng, int max_points) {
  std::uniform_int_distribution<int> npts(1, max_points);
  int n = npts(rng);
  std::vector<std::string> points;
  for (int i = 0; i < n; ++i) points.push_back("p" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> rels;
  std::uniform_int_distribution<int> coin(0, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng) == 0) rels.push_back({points[i], points[j]});
  return FinitePoset::from_relations(points, rels);
}

Space random_topological_space(Rng& rng, int max_points) {
  Space X;
  X.poset = random_poset(rng, max_points);
  X.universe.kind = UniverseKind::topological;
  return X;
}

namespace {

PlaceList default_q_places() {
  PlaceList pl;
  pl.add_place(pl.make_finite_place("x", "zero", false));
  pl.add_place(pl.make_finite_place("x-1", "one", false));
  Place inf;
  inf.at_infinity = true;
  inf.name = "inf";
  pl.add_place(inf);
  return pl;
}

// monotone random pole assignment over the default places
std::vector<PoleSet> random_stalks(Rng& rng, const FinitePoset& P, const PlaceList& pl) {
  std::uniform_int_distribution<int> coin(0, 3);
  std::vector<PoleSet> t(P.size());
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t v = 0; v < pl.places.size(); ++v)
      if (coin(rng) == 0) t[i].s.insert(static_cast<int>(v));
  // upward closure along the order
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [p, q] : P.hasse()) {
      if (t[q].all) continue;
      if (t[p].all) {
        t[q] = PoleSet::make_all();
        changed = true;
        continue;
      }
      for (int v : t[p].s)
        if (!t[q].s.count(v)) {
          t[q].s.insert(v);
          changed = true;
        }
    }
  }
  // occasionally promote a maximal point to the full function field
  for (std::size_t i = 0; i < P.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < P.size(); ++j)
      if (P.less(static_cast<int>(i), static_cast<int>(j))) maximal = false;
    if (maximal && coin(rng) == 0) t[i] = PoleSet::make_all();
  }
  return t;
}

}  // namespace

Space random_rational_space(Rng& rng, int max_points) {
  Space X;
  X.poset = random_poset(rng, max_points);
  X.universe.kind = UniverseKind::rational;
  X.universe.places = default_q_places();
  X.stalk_poles = random_stalks(rng, X.poset, X.universe.places);
  X.validate();
  return X;
}

Space random_chain_space(Rng& rng, int max_points) {
  std::uniform_int_distribution<int> npts(1, max_points);
  int n = npts(rng);
  std::vector<std::string> points;
  std::vector<std::pair<std::string, std::string>> rels;
  for (int i = 0; i < n; ++i) points.push_back("c" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) rels.push_back({points[i], points[i + 1]});
  Space X;
  X.poset = FinitePoset::from_relations(points, rels);
  X.universe.kind = UniverseKind::rational;
  X.universe.places = default_q_places();
  X.stalk_poles = random_stalks(rng, X.poset, X.universe.places);
  X.validate();
  return X;
}

Space random_schematic_rational_space(Rng& rng, int max_points) {
  for (int attempt = 0; attempt < 40; ++attempt) {
    Space X = random_rational_space(rng, max_points);
    if (is_schematic(X).is_true()) return X;
  }
  return random_chain_space(rng, max_points);
}

std::vector<SheafDescriptor> sheaf_samples(Rng& rng, const Space& X) {
  std::vector<SheafDescriptor> out;
  // random up-set patterns
  std::uniform_int_distribution<int> coin(0, 1);
  for (int k = 0; k < 3; ++k) {
    std::vector<bool> v(X.poset.size(), false);
    for (std::size_t i = 0; i < X.poset.size(); ++i)
      if (coin(rng)) v[i] = true;
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto [p, q] : X.poset.hasse())
        if (v[p] && !v[q]) {
          v[q] = true;
          changed = true;
        }
    }
    out.push_back(SheafDescriptor::pattern_sheaf(X, v));
  }
  if (X.rational()) {
    out.push_back(SheafDescriptor::structure(X));
    // a polering thickening of the structure sheaf
    RationalSheaf s;
    s.pieces.resize(X.poset.size());
    std::uniform_int_distribution<int> pick(0, static_cast<int>(X.universe.places.places.size()) - 1);
    std::vector<PoleSet> t = X.stalk_poles;
    int extra = pick(rng);
    for (std::size_t i = 0; i < X.poset.size(); ++i)
      if (!t[i].all) t[i].s.insert(extra);
    for (auto [p, q] : X.poset.hasse()) t[q] = t[q].unite(t[p]);
    for (std::size_t i = 0; i < X.poset.size(); ++i) s.pieces[i].push_back(Entry::ring(t[i]));
    for (auto e : X.poset.hasse()) s.edge_src[e] = {0};
    out.push_back(SheafDescriptor::rational_sheaf(X, std::move(s)));
  } else if (X.universe.z_base) {
    // constant sheaf and a torsion tilde
    out.push_back(tilde(X, FpModule::free_module(1)));
    IntMat rel(1, 1);
    rel(0, 0) = 3;
    out.push_back(tilde(X, FpModule{1, rel}));
  }
  return out;
}

std::vector<SheafDescriptor> qc_library(Rng& rng, const Space& X, int max_exp) {
  std::vector<SheafDescriptor> out;
  out.push_back(SheafDescriptor::structure(X));
  if (!X.rational()) {
    if (X.universe.z_base) {
      out.push_back(tilde(X, FpModule::free_module(2)));
      IntMat rel(1, 1);
      rel(0, 0) = 4;
      out.push_back(tilde(X, FpModule{1, rel}));
    }
    return out;
  }
  PoleSet common = PoleSet::make_all();
  for (const PoleSet& t : X.stalk_poles) common = common.intersect(t);
  bool mono_base = !common.all;
  std::set<int> towers;
  if (mono_base)
    for (int v : common.s)
      if (v != X.universe.places.zero && v != X.universe.places.infinity) towers.insert(v);
  if (mono_base && towers.empty()) {
    bool lo = X.universe.places.zero >= 0 && common.contains(X.universe.places.zero);
    bool hi = X.universe.places.infinity >= 0 && common.contains(X.universe.places.infinity);
    for (int e = -max_exp; e <= max_exp; ++e) {
      Entry m = Entry::mono_interval(lo ? std::nullopt : std::optional<long>(e),
                                     hi ? std::nullopt : std::optional<long>(e));
      out.push_back(tilde(X, m));
    }
  } else {
    out.push_back(tilde(X, Entry::ring(common)));
  }
  // twisting line bundles: random exponent assignments kept when they are qc
  std::uniform_int_distribution<int> exp(-max_exp, max_exp);
  for (int attempt = 0; attempt < 30 && out.size() < 24; ++attempt) {
    std::vector<Entry> line(X.poset.size());
    bool valid = true;
    for (std::size_t t = 0; t < X.poset.size(); ++t) {
      const PoleSet& T = X.poles(static_cast<int>(t));
      if (T.all) {
        line[t] = Entry::ring(PoleSet::make_all());
        continue;
      }
      bool has_tower = false;
      for (int v : T.s)
        if (v != X.universe.places.zero && v != X.universe.places.infinity) has_tower = true;
      if (has_tower) {
        line[t] = Entry::ring(T);
        continue;
      }
      bool lo = X.universe.places.zero >= 0 && T.contains(X.universe.places.zero);
      bool hi = X.universe.places.infinity >= 0 && T.contains(X.universe.places.infinity);
      long e = exp(rng);
      line[t] = Entry::mono_interval(lo ? std::nullopt : std::optional<long>(e),
                                     hi ? std::nullopt : std::optional<long>(e));
    }
    if (!valid) continue;
    try {
      SheafDescriptor F = SheafDescriptor::frac_mono(X, line);
      if (is_quasi_coherent(X, F).ok) out.push_back(std::move(F));
    } catch (const input_error&) {
      continue;
    }
  }
  return out;
}

std::vector<OpenSet> random_cover(Rng& rng, const FinitePoset& P) {
  std::vector<OpenSet> cover;
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<bool> covered(P.size(), false);
  for (std::size_t i = 0; i < P.size(); ++i) {
    if (coin(rng)) {
      OpenSet u = minimal_open(P, static_cast<int>(i));
      for (int m : u.members) covered[m] = true;
      cover.push_back(std::move(u));
    }
  }
  for (std::size_t i = 0; i < P.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < P.size(); ++j)
      if (P.less(static_cast<int>(j), static_cast<int>(i))) minimal = false;
    if (minimal && !covered[i]) {
      OpenSet u = minimal_open(P, static_cast<int>(i));
      for (int m : u.members) covered[m] = true;
      cover.push_back(std::move(u));
    }
  }
  // occasionally add a union open
  if (cover.size() >= 2 && coin(rng)) {
    std::vector<int> merged = cover[0].members;
    merged.insert(merged.end(), cover[1].members.begin(), cover[1].members.end());
    cover.push_back(OpenSet::make(P, merged));
  }
  return cover;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  Morphism h;
  h.source = f.source;
  h.target = g.target;
  for (std::size_t x = 0; x < f.source.poset.size(); ++x)
    h.point_map.push_back(g.point_map[f.point_map[x]]);
  h.validate();
  return h;
}

std::vector<Morphism> schematic_morphisms(Rng& rng, int want) {
  std::vector<Morphism> out;
  auto push_if_good = [&](const Morphism& f) {
    if (!is_schematic(f.source).is_true() || !is_schematic(f.target).is_true()) return;
    if (is_schematic_morphism(f).is_true()) out.push_back(f);
  };
  while (static_cast<int>(out.size()) < want) {
    Space X = random_schematic_rational_space(rng, 5);
    push_if_good(Morphism::identity(X));
    // open inclusions
    for (std::size_t p = 0; p < X.poset.size() && static_cast<int>(out.size()) < want; ++p)
      push_if_good(Morphism::open_inclusion(X, minimal_open(X.poset, static_cast<int>(p))));
    // collapse to the sections point
    std::vector<std::vector<int>> comps = components(OpenSet::whole(X.poset));
    if (comps.size() == 1) {
      Space pt;
      pt.poset = FinitePoset::from_relations({"pt"}, {});
      pt.universe = X.universe;
      pt.stalk_poles = {section_poles(X, comps[0])};
      push_if_good(Morphism::to_point(X, pt));
    }
    // model refinement morphisms on chain spaces
    Space C = random_chain_space(rng, 5);
    std::vector<OpenSet> coarse, fine;
    for (std::size_t i = 0; i < C.poset.size(); i += 2)
      coarse.push_back(minimal_open(C.poset, static_cast<int>(i)));
    for (std::size_t i = 0; i < C.poset.size(); ++i)
      fine.push_back(minimal_open(C.poset, static_cast<int>(i)));
    if (!coarse.empty() && coarse.front().members.size() == C.poset.size()) {
      try {
        push_if_good(refinement_morphism(C, coarse, fine));
      } catch (const input_error&) {
      }
    }
  }
  out.resize(want, out.back());
  return out;
}

std::vector<Morphism> weak_equivalences(Rng& rng, int want) {
  std::vector<Morphism> out;
  while (static_cast<int>(out.size()) < want) {
    Space C = random_chain_space(rng, 5);
    // collapse to the minimum point
    std::vector<std::vector<int>> comps = components(OpenSet::whole(C.poset));
    Space pt;
    pt.poset = FinitePoset::from_relations({"pt"}, {});
    pt.universe = C.universe;
    pt.stalk_poles = {section_poles(C, comps[0])};
    Morphism collapse = Morphism::to_point(C, pt);
    if (is_affine_morphism(collapse, AffineMorphismMode::weak_equivalence).is_true())
      out.push_back(collapse);
    if (static_cast<int>(out.size()) >= want) break;
    // covering refinement on the chain: suffix opens
    std::vector<OpenSet> coarse, fine;
    coarse.push_back(minimal_open(C.poset, 0));
    for (std::size_t i = 0; i < C.poset.size(); ++i)
      fine.push_back(minimal_open(C.poset, static_cast<int>(i)));
    try {
      Morphism f = refinement_morphism(C, coarse, fine);
      if (is_affine_morphism(f, AffineMorphismMode::weak_equivalence).is_true()) out.push_back(f);
    } catch (const input_error&) {
    }
  }
  out.resize(want, out.back());
  return out;
}

}  // namespace finsp::testsupport
