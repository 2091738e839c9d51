#include "finsp/predicates.hpp"

#include <algorithm>

namespace finsp {

namespace {

void fail(PredicateVerdict& v, const std::string& what, const std::string& evidence) {
  v.obligations.push_back({what, false, evidence});
  if (v.v != PredicateVerdict::V::no) {
    v.v = PredicateVerdict::V::no;
    v.counterexample = what + (evidence.empty() ? "" : ": " + evidence);
  }
}

void pass(PredicateVerdict& v, const std::string& what, const std::string& evidence = "") {
  v.obligations.push_back({what, true, evidence});
}

std::string pair_name(const Space& X, int p, int q) {
  return "(" + X.poset.label(p) + "," + X.poset.label(q) + ")";
}

std::vector<std::pair<int, int>> up_edges(const FinitePoset& P, const OpenSet& U, bool paranoid) {
  std::vector<std::pair<int, int>> out;
  if (paranoid) {
    for (int a : U.members)
      for (int b : U.members)
        if (P.less(a, b)) out.push_back({a, b});
  } else {
    for (auto e : P.hasse())
      if (U.contains(e.first) && U.contains(e.second)) out.push_back(e);
  }
  return out;
}

}  // namespace

std::vector<AbelianInvariants> order_complex_homology(const FinitePoset& X) {
  std::vector<IntMat> boundaries = order_complex_boundaries(X);
  if (X.size() == 0) return {};
  if (boundaries.empty()) return {AbelianInvariants{X.size(), {}}};
  // boundaries[i] : C_{i+1} -> C_i; reverse into a complex the engine reads
  std::vector<std::size_t> dims;
  std::size_t k = boundaries.size();
  dims.push_back(boundaries[k - 1].cols());
  for (std::size_t i = k; i-- > 0;) dims.push_back(boundaries[i].rows());
  std::vector<IntMat> d;
  for (std::size_t i = k; i-- > 0;) d.push_back(boundaries[i]);
  std::vector<AbelianInvariants> rev = z_complex_homology(free_z_complex(dims, d));
  std::reverse(rev.begin(), rev.end());
  return rev;
}

PredicateVerdict is_schematic_open(const Space& X, const OpenSet& U, bool paranoid) {
  PredicateVerdict v;
  if (X.universe.kind == UniverseKind::topological) {
    for (const std::vector<int>& comp : components(U)) {
      std::string name = "component of " + X.poset.label(comp.front());
      if (component_has_maximum(X.poset, comp))
        pass(v, name + " is irreducible");
      else
        fail(v, name + " is not irreducible", "no maximum point");
    }
    return v;
  }
  SheafDescriptor O = SheafDescriptor::structure(X);
  for (int p : U.members) {
    for (int q : U.members) {
      OpenSet upq = intersect(minimal_open(X.poset, p), minimal_open(X.poset, q));
      for (auto [pp, pprime] : up_edges(X.poset, U, paranoid)) {
        if (pp != p) continue;
        OpenSet upq2 = intersect(minimal_open(X.poset, pprime), minimal_open(X.poset, q));
        PoleSet delta = X.poles(pprime).minus(X.poles(p));
        BaseChangeResult r = base_change_isos(X, upq, upq2, delta, O);
        std::string what = "base change at pair " + pair_name(X, p, q) + " along edge " +
                           X.poset.label(p) + " <= " + X.poset.label(pprime);
        if (r.ok)
          pass(v, what);
        else
          fail(v, what, r.detail);
      }
    }
  }
  return v;
}

PredicateVerdict is_schematic(const Space& X, bool paranoid) {
  return is_schematic_open(X, OpenSet::whole(X.poset), paranoid);
}

PredicateVerdict is_semi_separated(const Space& X, bool paranoid) {
  PredicateVerdict v;
  OpenSet whole = OpenSet::whole(X.poset);
  SheafDescriptor O = SheafDescriptor::structure(X);
  for (int p : whole.members) {
    for (int q : whole.members) {
      OpenSet upq = intersect(minimal_open(X.poset, p), minimal_open(X.poset, q));
      std::string uname = "U" + pair_name(X, p, q);
      if (is_acyclic(X, upq))
        pass(v, uname + " acyclic");
      else
        fail(v, uname + " not acyclic", "");
      for (auto [pp, pprime] : up_edges(X.poset, whole, paranoid)) {
        if (pp != p) continue;
        OpenSet upq2 = intersect(minimal_open(X.poset, pprime), minimal_open(X.poset, q));
        PoleSet delta = X.rational() ? X.poles(pprime).minus(X.poles(p)) : PoleSet{};
        BaseChangeResult r = base_change_isos(X, upq, upq2, delta, O, 0);
        std::string what = "degree-0 base change at pair " + pair_name(X, p, q) +
                           " along edge " + X.poset.label(p) + " <= " + X.poset.label(pprime);
        if (r.ok)
          pass(v, what);
        else
          fail(v, what, r.detail);
      }
    }
  }
  return v;
}

PredicateVerdict is_schematic_morphism(const Morphism& f, MorphismMode mode, bool paranoid) {
  f.validate();
  PredicateVerdict v;
  const Space& X = f.source;
  const Space& Y = f.target;
  SheafDescriptor O = SheafDescriptor::structure(X);
  OpenSet wholeX = OpenSet::whole(X.poset);
  OpenSet wholeY = OpenSet::whole(Y.poset);
  int only_degree = mode == MorphismMode::locally_acyclic ? 0 : -1;
  for (std::size_t xi = 0; xi < X.poset.size(); ++xi) {
    int x = static_cast<int>(xi);
    for (std::size_t yi = 0; yi < Y.poset.size(); ++yi) {
      int y = static_cast<int>(yi);
      OpenSet uxy = intersect(minimal_open(X.poset, x), f.preimage(minimal_open(Y.poset, y)));
      std::string base = "pair (" + X.poset.label(x) + "," + Y.poset.label(y) + ")";
      if (mode == MorphismMode::locally_acyclic) {
        if (is_acyclic(X, uxy))
          pass(v, base + ": U_xy acyclic");
        else
          fail(v, base + ": U_xy not acyclic", "");
      }
      for (auto [xx, xprime] : up_edges(X.poset, wholeX, paranoid)) {
        if (xx != x) continue;
        OpenSet ub = intersect(minimal_open(X.poset, xprime), f.preimage(minimal_open(Y.poset, y)));
        PoleSet delta = X.rational() ? X.poles(xprime).minus(X.poles(x)) : PoleSet{};
        BaseChangeResult r = base_change_isos(X, uxy, ub, delta, O, only_degree);
        std::string what = base + ": source edge " + X.poset.label(x) + " <= " +
                           X.poset.label(xprime);
        if (r.ok)
          pass(v, what);
        else
          fail(v, what, r.detail);
      }
      for (auto [yy, yprime] : up_edges(Y.poset, wholeY, paranoid)) {
        if (yy != y) continue;
        OpenSet ub = intersect(minimal_open(X.poset, x), f.preimage(minimal_open(Y.poset, yprime)));
        PoleSet delta = Y.rational() ? Y.poles(yprime).minus(Y.poles(y)) : PoleSet{};
        BaseChangeResult r = base_change_isos(X, uxy, ub, delta, O, only_degree);
        std::string what = base + ": target edge " + Y.poset.label(y) + " <= " +
                           Y.poset.label(yprime);
        if (r.ok)
          pass(v, what);
        else
          fail(v, what, r.detail);
      }
    }
  }
  return v;
}

PredicateVerdict is_affine_open(const Space& X, const OpenSet& U) {
  PredicateVerdict v;
  if (U.members.empty()) {
    pass(v, "empty space");
    return v;
  }
  if (X.universe.kind == UniverseKind::topological) {
    FinitePoset sub = X.poset.induced(U.members);
    FinitePoset core = core_reduction(sub);
    if (core.size() == 1) {
      pass(v, "homotopy core is a point");
      return v;
    }
    pass(v, "homotopy core has " + std::to_string(core.size()) + " points", "inconclusive");
    std::vector<AbelianInvariants> h = order_complex_homology(sub);
    bool nontrivial = false;
    if (!h.empty() && (h[0].free_rank > 1 || !h[0].torsion.empty())) nontrivial = true;
    for (std::size_t i = 1; i < h.size(); ++i)
      if (!h[i].trivial()) nontrivial = true;
    if (nontrivial) {
      fail(v, "order complex has nonzero reduced homology", "");
      return v;
    }
    v.v = PredicateVerdict::V::unknown;
    v.obligations.push_back({"reduced homology vanishes but core is not a point", true, ""});
    return v;
  }

  int min_point = -1;
  if (has_minimum(U, &min_point)) {
    pass(v, "has minimum " + X.poset.label(min_point));
    return v;
  }
  PredicateVerdict sch = is_schematic_open(X, U);
  if (sch.is_false()) {
    fail(v, "not schematic", sch.counterexample);
    return v;
  }
  pass(v, "schematic");
  if (!is_acyclic(X, U)) {
    fail(v, "not acyclic", "H^i(U,O) != 0 for some i > 0");
    return v;
  }
  pass(v, "acyclic");
  PoleSet common = PoleSet::make_all();
  for (int t : U.members) common = common.intersect(X.poles(t));
  if (!common.empty()) {
    pass(v, "all stalks share a pole (global inversions exist)",
         pole_set_to_string(common, X.universe.places));
    return v;
  }
  std::vector<int> nonconstant;
  for (int t : U.members)
    if (!X.poles(t).empty()) nonconstant.push_back(t);
  if (nonconstant.size() <= 1) {
    pass(v, "pairwise-tensor battery: at most one nonconstant stalk");
    return v;
  }
  fail(v, "pairwise-tensor battery", "empty common pole set with nonconstant stalks at " +
                                         X.poset.label(nonconstant[0]) + " and " +
                                         X.poset.label(nonconstant[1]));
  return v;
}

PredicateVerdict is_affine(const Space& X) { return is_affine_open(X, OpenSet::whole(X.poset)); }

PredicateVerdict is_affine_morphism(const Morphism& f, AffineMorphismMode mode) {
  f.validate();
  PredicateVerdict v;
  PredicateVerdict sch = is_schematic_morphism(f, MorphismMode::schematic);
  if (sch.is_false()) {
    fail(v, "morphism is not schematic", sch.counterexample);
    return v;
  }
  pass(v, "schematic morphism");
  const Space& Y = f.target;
  for (std::size_t yi = 0; yi < Y.poset.size(); ++yi) {
    int y = static_cast<int>(yi);
    OpenSet pre = f.preimage(minimal_open(Y.poset, y));
    PredicateVerdict a = is_affine_open(f.source, pre);
    std::string what = "preimage of U_" + Y.poset.label(y) + " affine";
    if (a.is_true()) {
      pass(v, what);
    } else if (a.is_unknown()) {
      v.obligations.push_back({what, true, "unknown"});
      if (v.v == PredicateVerdict::V::yes) v.v = PredicateVerdict::V::unknown;
    } else {
      fail(v, what, a.counterexample);
      return v;
    }
    if (mode == AffineMorphismMode::weak_equivalence) {
      std::string wname = "sections over preimage of U_" + Y.poset.label(y) + " equal O_y";
      if (Y.universe.kind == UniverseKind::topological) {
        std::vector<std::vector<int>> comps = components(pre);
        if (comps.size() == 1)
          pass(v, wname);
        else
          fail(v, wname, "preimage has " + std::to_string(comps.size()) + " components");
      } else {
        std::vector<std::vector<int>> comps = components(pre);
        if (comps.size() != 1) {
          fail(v, wname, "preimage has " + std::to_string(comps.size()) + " components");
          continue;
        }
        PoleSet sec = section_poles(f.source, comps[0]);
        if (sec == Y.poles(y))
          pass(v, wname);
        else
          fail(v, wname,
               pole_set_to_string(sec, Y.universe.places) + " != " +
                   pole_set_to_string(Y.poles(y), Y.universe.places));
      }
    }
  }
  return v;
}

SteinFactorization stein_factorization(const Morphism& f) {
  f.validate();
  PredicateVerdict sx = is_schematic(f.source);
  if (sx.is_false()) throw input_error("stein factorization: source is not schematic");
  PredicateVerdict sy = is_schematic(f.target);
  if (sy.is_false()) throw input_error("stein factorization: target is not schematic");
  PredicateVerdict sf = is_schematic_morphism(f, MorphismMode::schematic);
  if (sf.is_false())
    throw input_error("stein factorization: morphism is not schematic: " + sf.counterexample);

  const Space& Y = f.target;
  Space mid;
  mid.poset = Y.poset;
  mid.universe = Y.universe;
  if (Y.rational()) {
    mid.stalk_poles.resize(Y.poset.size());
    for (std::size_t y = 0; y < Y.poset.size(); ++y) {
      OpenSet pre = f.preimage(minimal_open(Y.poset, static_cast<int>(y)));
      std::vector<std::vector<int>> comps = components(pre);
      if (comps.size() != 1)
        throw unrepresentable_error(
            "stein factorization: sections over the preimage of U_" +
            Y.poset.label(static_cast<int>(y)) + " do not form a pole ring");
      mid.stalk_poles[y] = section_poles(f.source, comps[0]);
    }
    mid.validate();
  } else {
    for (std::size_t y = 0; y < Y.poset.size(); ++y) {
      OpenSet pre = f.preimage(minimal_open(Y.poset, static_cast<int>(y)));
      if (components(pre).size() != 1)
        throw unrepresentable_error(
            "stein factorization: direct image ring at " + Y.poset.label(static_cast<int>(y)) +
            " is not the constant base ring");
    }
  }
  SteinFactorization out;
  out.intermediate = mid;
  out.f_prime.source = f.source;
  out.f_prime.target = mid;
  out.f_prime.point_map = f.point_map;
  out.f_prime.validate();
  out.a.source = mid;
  out.a.target = Y;
  for (std::size_t i = 0; i < Y.poset.size(); ++i) out.a.point_map.push_back(static_cast<int>(i));
  out.a.validate();
  return out;
}

bool space_equal(const Space& A, const Space& B) {
  if (!(A.universe == B.universe)) return false;
  if (A.poset.points() != B.poset.points()) return false;
  for (std::size_t i = 0; i < A.poset.size(); ++i)
    for (std::size_t j = 0; j < A.poset.size(); ++j)
      if (A.poset.leq(static_cast<int>(i), static_cast<int>(j)) !=
          B.poset.leq(static_cast<int>(i), static_cast<int>(j)))
        return false;
  if (A.rational() && !(A.stalk_poles == B.stalk_poles)) return false;
  return true;
}

FiberedProduct fibered_product(const Morphism& f, const Morphism& g) {
  f.validate();
  g.validate();
  if (!space_equal(f.target, g.target))
    throw input_error("fibered product: the two morphisms have different targets");
  const Space& X = f.source;
  const Space& Y = g.source;
  if (!(X.universe == Y.universe))
    throw input_error("fibered product: factors live in different universes");

  struct Pt {
    std::string label;
    int x, y;
  };
  std::vector<Pt> pts;
  for (std::size_t x = 0; x < X.poset.size(); ++x)
    for (std::size_t y = 0; y < Y.poset.size(); ++y)
      if (f.point_map[x] == g.point_map[y])
        pts.push_back({"(" + X.poset.label(static_cast<int>(x)) + "," +
                           Y.poset.label(static_cast<int>(y)) + ")",
                       static_cast<int>(x), static_cast<int>(y)});
  std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.label < b.label; });
  std::vector<std::string> labels;
  for (const Pt& p : pts) labels.push_back(p.label);
  std::vector<std::vector<bool>> le(pts.size(), std::vector<bool>(pts.size(), false));
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = 0; b < pts.size(); ++b)
      le[a][b] = X.poset.leq(pts[a].x, pts[b].x) && Y.poset.leq(pts[a].y, pts[b].y);

  FiberedProduct out;
  out.Z.poset = FinitePoset::from_leq(labels, le);
  out.Z.universe = X.universe;
  if (X.rational()) {
    out.Z.stalk_poles.resize(pts.size());
    for (std::size_t a = 0; a < pts.size(); ++a)
      out.Z.stalk_poles[a] = X.poles(pts[a].x).unite(Y.poles(pts[a].y));
    out.Z.validate();
  }
  out.proj_x.source = out.Z;
  out.proj_x.target = X;
  out.proj_y.source = out.Z;
  out.proj_y.target = Y;
  for (const Pt& p : pts) {
    out.proj_x.point_map.push_back(p.x);
    out.proj_y.point_map.push_back(p.y);
  }
  out.proj_x.validate();
  out.proj_y.validate();
  out.z_schematic = is_schematic(out.Z);
  out.proj_x_schematic = is_schematic_morphism(out.proj_x, MorphismMode::schematic);
  out.proj_y_schematic = is_schematic_morphism(out.proj_y, MorphismMode::schematic);
  return out;
}

}  // namespace finsp
