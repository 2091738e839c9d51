#include "support/properties.hpp"

#include <algorithm>
#include <sstream>

#include "finsp/render.hpp"
#include "finsp/scheme.hpp"

namespace finsp::testsupport {

namespace {

std::string describe(const Space& X) {
  std::ostringstream os;
  os << (X.rational() ? "rational" : "topological") << " space on {";
  for (std::size_t i = 0; i < X.poset.size(); ++i) {
    if (i) os << ",";
    os << X.poset.label(static_cast<int>(i));
    if (X.rational()) os << pole_set_to_string(X.poles(static_cast<int>(i)), X.universe.places);
  }
  os << "} edges ";
  for (auto [p, q] : X.poset.hasse()) os << X.poset.label(p) << "<" << X.poset.label(q) << " ";
  return os.str();
}

bool report_vanishes_above_zero(const CohomologyReport& r) {
  for (std::size_t i = 1; i < r.degrees(); ++i)
    if (!r.degree_trivial(i)) return false;
  return true;
}

}  // namespace

PropertyResult prop_minimal_open_acyclic_and_dim_vanishing(unsigned seed, int instances) {
  PropertyResult res;
  Rng rng(seed);
  for (int k = 0; k < instances; ++k) {
    Space X = (k % 2 == 0) ? random_rational_space(rng, 6) : random_topological_space(rng, 6);
    std::vector<SheafDescriptor> sheaves = sheaf_samples(rng, X);
    if (X.rational()) {
      auto lib = qc_library(rng, X, 2);
      sheaves.insert(sheaves.end(), lib.begin(), lib.end());
    }
    for (const SheafDescriptor& F : sheaves) {
      for (std::size_t p = 0; p < X.poset.size(); ++p) {
        OpenSet up = minimal_open(X.poset, static_cast<int>(p));
        CohomologyReport r = sheaf_cohomology(X, up, F);
        if (!report_vanishes_above_zero(r)) {
          res.ok = false;
          res.detail = "H^i(U_p, F) != 0 for i > 0 at " + X.poset.label(static_cast<int>(p)) +
                       " on " + describe(X);
          return res;
        }
      }
      OpenSet whole = OpenSet::whole(X.poset);
      CohomologyReport r = sheaf_cohomology(X, whole, F);
      for (std::size_t i = X.poset.dim() + 1; i < r.degrees(); ++i)
        if (!r.degree_trivial(i)) {
          res.ok = false;
          res.detail = "H^i != 0 above the dimension on " + describe(X);
          return res;
        }
      ++res.instances;
    }
  }
  return res;
}

PropertyResult prop_standard_complex_ddzero(unsigned seed, int instances) {
  PropertyResult res;
  Rng rng(seed);
  for (int k = 0; k < instances; ++k) {
    Space X = (k % 2 == 0) ? random_rational_space(rng, 6) : random_topological_space(rng, 6);
    for (const SheafDescriptor& F : sheaf_samples(rng, X)) {
      for (std::size_t p = 0; p < X.poset.size(); ++p) {
        // construction asserts d o d == 0 on every realization
        standard_complex(X, minimal_open(X.poset, static_cast<int>(p)), F);
      }
      standard_complex(X, OpenSet::whole(X.poset), F);
      ++res.instances;
    }
  }
  return res;
}

PropertyResult prop_exact_vs_window(unsigned seed, int instances) {
  PropertyResult res;
  Rng rng(seed);
  const int N = 8;
  for (int k = 0; k < instances; ++k) {
    Space X = random_rational_space(rng, 5);
    std::vector<SheafDescriptor> sheaves = qc_library(rng, X, 2);
    sheaves.push_back(SheafDescriptor::structure(X));
    for (const SheafDescriptor& F : sheaves) {
      if (F.kind == SheafDescriptor::Kind::pattern || F.kind == SheafDescriptor::Kind::abelian)
        continue;
      OpenSet U = OpenSet::whole(X.poset);
      CohomologyReport exact = sheaf_cohomology(X, U, F);
      WindowReport w = window_cohomology(X, U, F, N);
      // exact pieces summed over the window must reproduce the window totals
      int top = exact.top;
      for (int i = 0; i <= top; ++i) {
        long expected = 0;
        if (i < static_cast<int>(exact.pieces.size()))
          for (const ReportPiece& p : exact.pieces[i]) {
            if (!p.has_class) continue;
            long levels = 0;
            switch (p.cls.type) {
              case GradedClass::Type::unlisted:
                continue;  // not enumerable in a window
              case GradedClass::Type::tower:
                levels = N;
                break;
              case GradedClass::Type::laurent: {
                long lo = p.cls.lo_unb ? -static_cast<long>(N) : std::max<long>(p.cls.lo, -N);
                long hi = p.cls.hi_unb ? static_cast<long>(N) : std::min<long>(p.cls.hi, N);
                levels = std::max<long>(0, hi - lo + 1);
                break;
              }
            }
            expected += p.dim * levels;
          }
        if (expected != w.totals[i]) {
          res.ok = false;
          std::ostringstream os;
          os << "window totals disagree in degree " << i << ": exact predicts " << expected
             << ", window computed " << w.totals[i] << " on " << describe(X);
          res.detail = os.str();
          return res;
        }
      }
      ++res.instances;
    }
  }
  return res;
}

PropertyResult prop_extension_preserves_qc(unsigned seed, int instances) {
  PropertyResult res;
  Rng rng(seed);
  for (int k = 0; k < instances; ++k) {
    Space X = random_schematic_rational_space(rng, 5);
    for (std::size_t p = 0; p < X.poset.size(); ++p) {
      OpenSet U = minimal_open(X.poset, static_cast<int>(p));
      Morphism j = Morphism::open_inclusion(X, U);
      for (const SheafDescriptor& N : qc_library(rng, j.source, 2)) {
        for (int i = 0; i <= X.poset.dim(); ++i) {
          HigherDirectImage h = higher_direct_image(j, N, i);
          if (!h.qc) {
            res.ok = false;
            res.detail = "R^" + std::to_string(i) + " j_* not quasi-coherent: " +
                         h.counterexample + " on " + describe(X);
            return res;
          }
        }
        ++res.instances;
      }
    }
  }
  return res;
}

PropertyResult prop_edge_vs_paranoid(unsigned seed, int instances) {
  PropertyResult res;
  Rng rng(seed);
  for (int k = 0; k < instances; ++k) {
    Space X = (k % 3 == 2) ? random_topological_space(rng, 6) : random_rational_space(rng, 6);
    PredicateVerdict fast = is_schematic(X, false);
    PredicateVerdict slow = is_schematic(X, true);
    if (fast.is_true() != slow.is_true()) {
      res.ok = false;
      res.detail = "edge-checked schematic != paranoid on " + describe(X);
      return res;
    }
    PredicateVerdict fs = is_semi_separated(X, false);
    PredicateVerdict ss = is_semi_separated(X, true);
    if (fs.is_true() != ss.is_true()) {
      res.ok = false;
      res.detail = "edge-checked semi-separated != paranoid on " + describe(X);
      return res;
    }
    if (X.rational()) {
      for (const SheafDescriptor& F : qc_library(rng, X, 2)) {
        QcVerdict a = is_quasi_coherent(X, F, QcMode::quasi_coherent, false);
        QcVerdict b = is_quasi_coherent(X, F, QcMode::quasi_coherent, true);
        if (a.ok != b.ok) {
          res.ok = false;
          res.detail = "edge-checked qc != paranoid on " + describe(X);
          return res;
        }
      }
    }
    ++res.instances;
  }
  return res;
}

PropertyResult prop_stein(unsigned seed, int morphisms) {
  PropertyResult res;
  Rng rng(seed);
  std::vector<Morphism> fs = schematic_morphisms(rng, morphisms);
  for (const Morphism& f : fs) {
    SteinFactorization s = stein_factorization(f);
    // a o f' == f on points
    for (std::size_t x = 0; x < f.source.poset.size(); ++x)
      if (s.a.point_map[s.f_prime.point_map[x]] != f.point_map[x]) {
        res.ok = false;
        res.detail = "a o f' != f";
        return res;
      }
    PredicateVerdict aff = is_affine_morphism(s.a, AffineMorphismMode::affine);
    if (!aff.is_true()) {
      res.ok = false;
      res.detail = "the carrier morphism of the factorization is not affine: " +
                   aff.counterexample;
      return res;
    }
    // f'_* O = O_{Y'}: sections over each preimage equal the new stalk
    if (f.source.rational()) {
      for (std::size_t y = 0; y < s.intermediate.poset.size(); ++y) {
        OpenSet pre = s.f_prime.preimage(minimal_open(s.intermediate.poset, static_cast<int>(y)));
        std::vector<std::vector<int>> comps = components(pre);
        if (comps.size() != 1 ||
            !(section_poles(f.source, comps[0]) == s.intermediate.poles(static_cast<int>(y)))) {
          res.ok = false;
          res.detail = "direct image ring mismatch in the factorization";
          return res;
        }
      }
    }
    ++res.instances;
  }
  return res;
}

PropertyResult prop_fibered_universal(unsigned seed, int instances) {
  PropertyResult res;
  Rng rng(seed);
  auto morphisms_between = [](const Space& T, const Space& X) {
    std::vector<std::vector<int>> maps;
    std::vector<int> cur(T.poset.size(), 0);
    std::size_t total = 1;
    for (std::size_t i = 0; i < T.poset.size(); ++i) total *= X.poset.size();
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t c = code;
      for (std::size_t i = 0; i < T.poset.size(); ++i) {
        cur[i] = static_cast<int>(c % X.poset.size());
        c /= X.poset.size();
      }
      Morphism f;
      f.source = T;
      f.target = X;
      f.point_map = cur;
      try {
        f.validate();
        maps.push_back(cur);
      } catch (const input_error&) {
      }
    }
    return maps;
  };
  for (int k = 0; k < instances; ++k) {
    Space S = random_schematic_rational_space(rng, 2);
    Space X = random_schematic_rational_space(rng, 3);
    Space Y = random_schematic_rational_space(rng, 3);
    auto fs = morphisms_between(X, S);
    auto gs = morphisms_between(Y, S);
    if (fs.empty() || gs.empty()) continue;
    Morphism f{X, S, fs.front()};
    Morphism g{Y, S, gs.front()};
    FiberedProduct fp = fibered_product(f, g);
    Space T = random_rational_space(rng, 3);
    // pairs of maps T->X, T->Y agreeing on S correspond exactly to maps T->Z
    auto tx = morphisms_between(T, X);
    auto ty = morphisms_between(T, Y);
    auto tz = morphisms_between(T, fp.Z);
    std::size_t agreeing = 0;
    for (const auto& a : tx)
      for (const auto& b : ty) {
        bool agree = true;
        for (std::size_t i = 0; i < T.poset.size(); ++i)
          if (f.point_map[a[i]] != g.point_map[b[i]]) agree = false;
        if (!agree) continue;
        ++agreeing;
        // the induced candidate map into the product must be a valid morphism
        std::vector<int> h(T.poset.size(), -1);
        bool built = true;
        for (std::size_t i = 0; i < T.poset.size(); ++i) {
          std::string lbl = "(" + X.poset.label(a[i]) + "," + Y.poset.label(b[i]) + ")";
          int z = fp.Z.poset.index_of(lbl);
          if (z < 0) built = false;
          else h[i] = z;
        }
        if (!built) {
          res.ok = false;
          res.detail = "pair of legs has no point in the fibered product";
          return res;
        }
        Morphism hm{T, fp.Z, h};
        try {
          hm.validate();
        } catch (const input_error& e) {
          res.ok = false;
          res.detail = std::string("mediating map is not a morphism: ") + e.what();
          return res;
        }
      }
    if (agreeing != tz.size()) {
      res.ok = false;
      std::ostringstream os;
      os << "universal property count mismatch: " << agreeing << " leg pairs vs " << tz.size()
         << " maps into the product";
      res.detail = os.str();
      return res;
    }
    ++res.instances;
  }
  return res;
}

PropertyResult prop_weak_equivalence_roundtrip(unsigned seed, int instances) {
  PropertyResult res;
  Rng rng(seed);
  std::vector<Morphism> ws = weak_equivalences(rng, instances);
  for (const Morphism& f : ws) {
    for (const SheafDescriptor& M : qc_library(rng, f.source, 2)) {
      SheafDescriptor down = pushforward(f, M);
      SheafDescriptor back = pullback(f, down);
      if (!sheaf_equal(f.source, M, back)) {
        res.ok = false;
        res.detail = "pullback of pushforward differs from the original module";
        return res;
      }
      ++res.instances;
    }
  }
  return res;
}

PropertyResult prop_refinement_pairs(unsigned seed, int pairs) {
  PropertyResult res;
  Rng rng(seed);
  int made = 0;
  while (made < pairs) {
    Space C = random_chain_space(rng, 6);
    std::vector<OpenSet> coarse, fine;
    coarse.push_back(minimal_open(C.poset, 0));
    for (std::size_t i = 0; i < C.poset.size(); ++i)
      fine.push_back(minimal_open(C.poset, static_cast<int>(i)));
    Morphism f = refinement_morphism(C, coarse, fine);
    if (!is_affine_morphism(f, AffineMorphismMode::weak_equivalence).is_true()) continue;
    RefinementWitness w = refinement_equivalence(f);
    if (w.identifications.size() != f.target.poset.size()) {
      res.ok = false;
      res.detail = "witness does not cover every chart";
      return res;
    }
    for (const auto& pp : w.identifications)
      if (!(pp.chart == f.target.poles(pp.target_point))) {
        res.ok = false;
        res.detail = "witness chart differs from the target stalk";
        return res;
      }
    ++made;
    ++res.instances;
  }
  return res;
}

PropertyResult prop_semi_separated_implies_schematic(unsigned seed, int instances) {
  PropertyResult res;
  Rng rng(seed);
  for (int k = 0; k < instances; ++k) {
    Space X = (k % 3 == 2) ? random_topological_space(rng, 6) : random_rational_space(rng, 6);
    PredicateVerdict ss = is_semi_separated(X);
    PredicateVerdict sch = is_schematic(X);
    if (ss.is_true() && !sch.is_true()) {
      res.ok = false;
      res.detail = "semi-separated but not schematic: " + describe(X);
      return res;
    }
    PredicateVerdict aff = is_affine(X);
    if (aff.is_true() && sch.is_true() && !ss.is_true() && X.rational()) {
      res.ok = false;
      res.detail = "affine and schematic but not semi-separated: " + describe(X);
      return res;
    }
    ++res.instances;
  }
  return res;
}

PropertyResult prop_schematic_local(unsigned seed, int instances) {
  PropertyResult res;
  Rng rng(seed);
  for (int k = 0; k < instances; ++k) {
    Space X = random_rational_space(rng, 6);
    bool whole = is_schematic(X).is_true();
    bool local = true;
    for (std::size_t p = 0; p < X.poset.size(); ++p)
      local = local &&
              is_schematic_open(X, minimal_open(X.poset, static_cast<int>(p))).is_true();
    if (whole != local) {
      res.ok = false;
      res.detail = "schematic is not local on " + describe(X);
      return res;
    }
    ++res.instances;
  }
  return res;
}

PropertyResult prop_affine_open_iff_acyclic(unsigned seed, int instances) {
  PropertyResult res;
  Rng rng(seed);
  int done = 0;
  while (done < instances) {
    Space X = random_schematic_rational_space(rng, 6);
    if (!is_affine(X).is_true()) continue;
    for (std::size_t p = 0; p < X.poset.size(); ++p) {
      // sample opens: minimal ones and unions of two
      OpenSet U = minimal_open(X.poset, static_cast<int>(p));
      bool affine = is_affine_open(X, U).is_true();
      bool acyclic = is_acyclic(X, U);
      if (affine != acyclic) {
        res.ok = false;
        res.detail = "open affine != acyclic inside an affine ambient: " + describe(X);
        return res;
      }
      for (std::size_t q = 0; q < X.poset.size(); ++q) {
        std::vector<int> merged = U.members;
        OpenSet uq = minimal_open(X.poset, static_cast<int>(q));
        merged.insert(merged.end(), uq.members.begin(), uq.members.end());
        OpenSet W = OpenSet::make(X.poset, merged);
        PredicateVerdict av = is_affine_open(X, W);
        if (av.is_unknown()) continue;
        if (av.is_true() != is_acyclic(X, W)) {
          res.ok = false;
          res.detail = "open affine != acyclic inside an affine ambient: " + describe(X);
          return res;
        }
      }
    }
    ++done;
    ++res.instances;
  }
  return res;
}

namespace {

// test-only tensor of graded lines: x^a R_S (x) x^b R_T = x^{a+b} R_{S u T}
Entry entry_tensor(const Entry& a, const Entry& b, const PlaceList& pl) {
  if (a.kind == Entry::Kind::zero || b.kind == Entry::Kind::zero) return Entry::zero_entry();
  GradedProfile pa = profile_of(a, pl), pb = profile_of(b, pl);
  if (pa.unlisted || pb.unlisted) return Entry::ring(PoleSet::make_all());
  if (!pa.towers.empty() || !pb.towers.empty()) {
    // ring-shaped factors only (the library keeps towers inside rings)
    PoleSet t;
    t.s.insert(pa.towers.begin(), pa.towers.end());
    t.s.insert(pb.towers.begin(), pb.towers.end());
    if (pa.lo_unb || pb.lo_unb) t.s.insert(pl.zero);
    if (pa.hi_unb || pb.hi_unb) t.s.insert(pl.infinity);
    return Entry::ring(t);
  }
  bool lo_unb = pa.lo_unb || pb.lo_unb;
  bool hi_unb = pa.hi_unb || pb.hi_unb;
  return Entry::mono_interval(lo_unb ? std::nullopt : std::optional<long>(pa.lo + pb.lo),
                              hi_unb ? std::nullopt : std::optional<long>(pa.hi + pb.hi));
}

SheafDescriptor tensor_lines(const Space& X, const SheafDescriptor& A, const SheafDescriptor& B) {
  std::vector<Entry> line(X.poset.size());
  for (std::size_t t = 0; t < X.poset.size(); ++t)
    line[t] = entry_tensor(A.rat.pieces[t][0], B.rat.pieces[t][0], X.universe.places);
  return SheafDescriptor::frac_mono(X, line);
}

}  // namespace

PropertyResult prop_projection_formula(unsigned seed, int instances) {
  PropertyResult res;
  Rng rng(seed);
  std::vector<Morphism> ws = weak_equivalences(rng, instances);
  for (const Morphism& f : ws) {
    // weak equivalences are affine; M on the source, N on the target
    std::vector<SheafDescriptor> Ms = qc_library(rng, f.source, 2);
    std::vector<SheafDescriptor> Ns = qc_library(rng, f.target, 2);
    for (std::size_t i = 0; i < Ms.size() && i < 3; ++i)
      for (std::size_t j = 0; j < Ns.size() && j < 3; ++j) {
        const SheafDescriptor& M = Ms[i];
        const SheafDescriptor& N = Ns[j];
        if (M.kind != SheafDescriptor::Kind::rational || N.kind != SheafDescriptor::Kind::rational)
          continue;
        if (M.rat.pieces.empty() || M.rat.pieces[0].size() != 1) continue;
        if (N.rat.pieces.empty() || N.rat.pieces[0].size() != 1) continue;
        SheafDescriptor fM = pushforward(f, M);
        bool plain = true;
        for (auto& per : fM.rat.pieces) plain = plain && per.size() == 1;
        if (!plain) continue;
        SheafDescriptor lhs = tensor_lines(f.target, N, fM);
        SheafDescriptor rhs = pushforward(f, tensor_lines(f.source, pullback(f, N), M));
        if (!sheaf_equal(f.target, lhs, rhs)) {
          res.ok = false;
          res.detail = "projection formula fails";
          return res;
        }
        ++res.instances;
      }
  }
  return res;
}

PropertyResult prop_topological_schematic_rule(unsigned seed, int instances) {
  PropertyResult res;
  Rng rng(seed);
  for (int k = 0; k < instances; ++k) {
    Space X = random_topological_space(rng, 5);
    bool rule = is_schematic(X).is_true();
    // cohomological route: every base-change obligation over Z
    bool obligations = true;
    SheafDescriptor O = SheafDescriptor::structure(X);
    for (std::size_t p = 0; p < X.poset.size() && obligations; ++p)
      for (std::size_t q = 0; q < X.poset.size() && obligations; ++q) {
        OpenSet upq = intersect(minimal_open(X.poset, static_cast<int>(p)),
                                minimal_open(X.poset, static_cast<int>(q)));
        for (auto [pp, pprime] : X.poset.hasse()) {
          if (pp != static_cast<int>(p)) continue;
          OpenSet ub = intersect(minimal_open(X.poset, pprime),
                                 minimal_open(X.poset, static_cast<int>(q)));
          if (!base_change_isos(X, upq, ub, PoleSet{}, O).ok) {
            obligations = false;
            break;
          }
        }
      }
    if (rule != obligations) {
      res.ok = false;
      res.detail = "combinatorial rule disagrees with the base-change obligations on " +
                   describe(X);
      return res;
    }
    ++res.instances;
  }
  return res;
}

PropertyResult prop_core_preserves_homology(unsigned seed, int instances) {
  PropertyResult res;
  Rng rng(seed);
  for (int k = 0; k < instances; ++k) {
    FinitePoset P = random_poset(rng, 7);
    FinitePoset C = core_reduction(P);
    FinitePoset CC = core_reduction(C);
    if (C.points() != CC.points()) {
      res.ok = false;
      res.detail = "core reduction is not idempotent";
      return res;
    }
    std::vector<AbelianInvariants> hp = order_complex_homology(P);
    std::vector<AbelianInvariants> hc = order_complex_homology(C);
    std::size_t top = std::max(hp.size(), hc.size());
    for (std::size_t i = 0; i < top; ++i) {
      AbelianInvariants a = i < hp.size() ? hp[i] : AbelianInvariants{};
      AbelianInvariants b = i < hc.size() ? hc[i] : AbelianInvariants{};
      if (!(a == b)) {
        res.ok = false;
        res.detail = "core reduction changed the order-complex homology";
        return res;
      }
    }
    ++res.instances;
  }
  return res;
}

PropertyResult prop_snf_certificates(unsigned seed, int instances) {
  PropertyResult res;
  Rng rng(seed);
  std::uniform_int_distribution<int> dim(1, 8), entry(-20, 20);
  for (int k = 0; k < instances; ++k) {
    IntMat m(dim(rng), dim(rng));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
    SmithResult s = smith_normal_form(m);
    if (!(mul(mul(s.U, m), s.V) == s.D)) {
      res.ok = false;
      res.detail = "U*M*V != D";
      return res;
    }
    Int du = determinant(s.U), dv = determinant(s.V);
    if (!((du == 1 || du == -1) && (dv == 1 || dv == -1))) {
      res.ok = false;
      res.detail = "certificates are not unimodular";
      return res;
    }
    for (std::size_t i = 0; i + 1 < s.invariants.size(); ++i)
      if (s.invariants[i + 1] % s.invariants[i] != 0) {
        res.ok = false;
        res.detail = "invariants do not divide";
        return res;
      }
    ++res.instances;
  }
  return res;
}

PropertyResult prop_pole_algebra_closure(unsigned seed, int instances) {
  PropertyResult res;
  Rng rng(seed);
  PlaceList pl;
  pl.add_place(pl.make_finite_place("x", "zero", false));
  pl.add_place(pl.make_finite_place("x-1", "one", false));
  Place inf;
  inf.at_infinity = true;
  inf.name = "inf";
  pl.add_place(inf);
  std::uniform_int_distribution<int> c(-4, 4), lvl(0, 2);
  auto random_elem = [&]() {
    RatFunc<Rat> f;
    std::vector<Rat> head;
    for (int d = 0; d <= lvl(rng); ++d) head.push_back(Rat(c(rng)));
    f.head = PolyQ(head);
    for (int place = 0; place < 2; ++place) {
      int levels = lvl(rng);
      if (levels == 0) continue;
      std::vector<PolyQ> ls;
      for (int m = 0; m < levels; ++m) ls.push_back(PolyQ({Rat(c(rng))}));
      while (!ls.empty() && ls.back().zero()) ls.pop_back();
      if (!ls.empty()) f.polar[place] = ls;
    }
    return f;
  };
  for (int k = 0; k < instances; ++k) {
    RatFunc<Rat> e = random_elem(), f = random_elem();
    PoleSet T = pf_poles(e, pl).unite(pf_poles(f, pl));
    if (!pf_member(pf_add(e, f), T, pl) || !pf_member(pf_mul(e, f, pl), T, pl)) {
      res.ok = false;
      res.detail = "pole algebra is not closed under + or *";
      return res;
    }
    // canonical form round-trips through num/den
    auto [num, den] = pf_recompose(e, pl);
    if (!(pf_decompose(num, den, pl) == e)) {
      res.ok = false;
      res.detail = "decompose o recompose is not the identity";
      return res;
    }
    ++res.instances;
  }
  return res;
}

PropertyResult prop_pullback_preserves_qc(unsigned seed, int instances) {
  PropertyResult res;
  Rng rng(seed);
  std::vector<Morphism> fs = schematic_morphisms(rng, instances);
  for (const Morphism& f : fs) {
    for (const SheafDescriptor& N : qc_library(rng, f.target, 2)) {
      SheafDescriptor P = pullback(f, N);
      if (!is_quasi_coherent(f.source, P).ok) {
        res.ok = false;
        res.detail = "pullback of a quasi-coherent module is not quasi-coherent";
        return res;
      }
      ++res.instances;
    }
  }
  return res;
}

PropertyResult prop_minimum_sections_roundtrip(unsigned seed, int instances) {
  PropertyResult res;
  Rng rng(seed);
  int made = 0;
  while (made < instances) {
    Space X = random_chain_space(rng, 5);
    for (const SheafDescriptor& M : qc_library(rng, X, 2)) {
      if (M.kind != SheafDescriptor::Kind::rational) continue;
      // global sections = the stalk at the minimum; tilde returns the module
      int min_pt = -1;
      has_minimum(OpenSet::whole(X.poset), &min_pt);
      const Entry& gamma = M.rat.pieces[min_pt][0];
      try {
        SheafDescriptor back = tilde(X, gamma);
        if (!sheaf_equal(X, M, back)) {
          res.ok = false;
          res.detail = "tilde of the global sections differs from the module";
          return res;
        }
      } catch (const input_error&) {
        continue;
      }
      ++res.instances;
    }
    ++made;
  }
  return res;
}

}  // namespace finsp::testsupport
