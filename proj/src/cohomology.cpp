#include "finsp/cohomology.hpp"

#include <algorithm>
#include <climits>
#include <set>

namespace finsp {

std::string GradedClass::label(const PlaceList& pl) const {
  auto place_name = [&](int i) { return pl.places[i].name; };
  switch (type) {
    case Type::tower:
      return "place:" + place_name(place);
    case Type::unlisted:
      return "UNLISTED";
    case Type::laurent: {
      if (!lo_unb && !hi_unb && lo == 0 && hi == 0) return "constant";
      if (lo_unb && !hi_unb && hi == -1 && pl.zero >= 0) return "place:" + place_name(pl.zero);
      if (hi_unb && !lo_unb && lo == 1 && pl.infinity >= 0)
        return "place:" + place_name(pl.infinity);
      std::string l = lo_unb ? "" : std::to_string(lo);
      std::string h = hi_unb ? "" : std::to_string(hi);
      return "laurent:" + l + ".." + h;
    }
  }
  return "?";
}

Mult GradedClass::mult() const {
  if (type != Type::laurent) return Mult::w();
  if (lo_unb || hi_unb) return Mult::w();
  return Mult::n(hi - lo + 1);
}

long GradedClass::rep_degree() const {
  if (!lo_unb) return lo;
  if (!hi_unb) return hi;
  return 0;
}

bool CohomologyReport::degree_trivial(std::size_t i) const {
  if (zbased) return i >= groups.size() || groups[i].trivial();
  return i >= pieces.size() || pieces[i].empty();
}

bool CohomologyReport::has_omega(std::size_t i) const {
  if (zbased || i >= pieces.size()) return false;
  for (const ReportPiece& p : pieces[i])
    if (p.mult.omega && p.dim > 0) return true;
  return false;
}

long CohomologyReport::finite_total(std::size_t i) const {
  if (zbased || i >= pieces.size()) return 0;
  long total = 0;
  for (const ReportPiece& p : pieces[i])
    if (!p.mult.omega) total += p.dim * p.mult.count;
  return total;
}

namespace {

// ---------------------------------------------------------------------------
// Filtered standard complexes over graded pieces

struct PieceView {
  const RationalSheaf* s = nullptr;
  ResolvedPieces res;

  std::size_t npieces(int t) const { return s->pieces[t].size(); }
  const Entry& entry(int t, int j) const { return s->pieces[t][j]; }
  int src(int p, int q, int j) const { return p == q ? j : res.at(p, q)[j]; }
};

using Filter = std::vector<std::vector<char>>;  // per point, per piece

struct BasisElem {
  int chain = 0;  // index into chains[degree]
  int piece = 0;
};

template <class T>
struct BuiltComplex {
  std::vector<std::vector<Chain>> chains;               // per degree 0..top
  std::vector<std::vector<BasisElem>> elems;            // per degree
  std::vector<std::map<std::pair<int, int>, int>> pos;  // (chain idx, piece) -> basis idx
  std::vector<std::size_t> dims;
  std::vector<Matrix<T>> d;

  long h_at(std::size_t i) const {
    if (i >= dims.size()) return 0;
    std::size_t out = i < d.size() ? field_rank_of(d[i]) : 0;
    std::size_t in = i > 0 ? field_rank_of(d[i - 1]) : 0;
    return static_cast<long>(dims[i]) - static_cast<long>(out) - static_cast<long>(in);
  }

 private:
  static std::size_t field_rank_of(const Matrix<T>& m) { return field_rank(m); }
};

template <class T>
BuiltComplex<T> build_filtered(const OpenSet& U, const PieceView& view, const Filter& filt,
                               const T& one, int top) {
  BuiltComplex<T> out;
  for (int n = 0; n <= top; ++n) out.chains.push_back(enumerate_chains(U, n));
  out.elems.resize(out.chains.size());
  out.pos.resize(out.chains.size());
  for (std::size_t n = 0; n < out.chains.size(); ++n) {
    for (std::size_t c = 0; c < out.chains[n].size(); ++c) {
      int t = out.chains[n][c].back();
      for (std::size_t j = 0; j < view.npieces(t); ++j) {
        if (!filt[t][j] || view.entry(t, static_cast<int>(j)).kind == Entry::Kind::zero) continue;
        out.pos[n][{static_cast<int>(c), static_cast<int>(j)}] =
            static_cast<int>(out.elems[n].size());
        out.elems[n].push_back({static_cast<int>(c), static_cast<int>(j)});
      }
    }
    out.dims.push_back(out.elems[n].size());
  }
  // chain index lookup per degree
  std::vector<std::map<Chain, int>> chain_idx(out.chains.size());
  for (std::size_t n = 0; n < out.chains.size(); ++n)
    for (std::size_t c = 0; c < out.chains[n].size(); ++c)
      chain_idx[n][out.chains[n][c]] = static_cast<int>(c);

  for (std::size_t n = 0; n + 1 < out.chains.size(); ++n) {
    Matrix<T> m(out.dims[n + 1], out.dims[n]);
    for (std::size_t e = 0; e < out.elems[n + 1].size(); ++e) {
      const Chain& c = out.chains[n + 1][out.elems[n + 1][e].chain];
      int piece = out.elems[n + 1][e].piece;
      for (std::size_t drop = 0; drop + 1 < c.size(); ++drop) {
        Chain sub;
        for (std::size_t t = 0; t < c.size(); ++t)
          if (t != drop) sub.push_back(c[t]);
        auto cit = chain_idx[n].find(sub);
        if (cit == chain_idx[n].end()) continue;
        auto pit = out.pos[n].find({cit->second, piece});
        if (pit == out.pos[n].end()) continue;
        T sgn = (drop % 2 == 0) ? one : -one;
        m(e, pit->second) += sgn;
      }
      {  // drop the top point: the restriction term
        Chain sub(c.begin(), c.end() - 1);
        int from = sub.back(), to = c.back();
        int srcp = view.src(from, to, piece);
        if (srcp >= 0 && filt[from][srcp] && view.entry(from, srcp).kind != Entry::Kind::zero) {
          auto cit = chain_idx[n].find(sub);
          auto pit = out.pos[n].find({cit->second, srcp});
          if (pit != out.pos[n].end()) {
            T sgn = (c.size() - 1) % 2 == 0 ? one : -one;
            m(e, pit->second) += sgn;
          }
        }
      }
    }
    out.d.push_back(std::move(m));
  }
  for (std::size_t i = 0; i + 1 < out.d.size(); ++i)
    if (!is_zero_matrix(mul(out.d[i + 1], out.d[i])))
      throw std::logic_error("standard complex: d o d != 0");
  return out;
}

// chain map given by basis identification (every B element is an A element)
template <class T>
Matrix<T> restriction_map(const BuiltComplex<T>& A, const BuiltComplex<T>& B, std::size_t i,
                          const T& one) {
  Matrix<T> phi(B.dims[i], A.dims[i]);
  std::map<Chain, int> a_chain;
  for (std::size_t c = 0; c < A.chains[i].size(); ++c) a_chain[A.chains[i][c]] = static_cast<int>(c);
  for (std::size_t e = 0; e < B.elems[i].size(); ++e) {
    const Chain& c = B.chains[i][B.elems[i][e].chain];
    auto cit = a_chain.find(c);
    if (cit == a_chain.end()) throw std::logic_error("restriction map: chain missing upstairs");
    auto pit = A.pos[i].find({cit->second, B.elems[i][e].piece});
    if (pit == A.pos[i].end()) throw std::logic_error("restriction map: piece missing upstairs");
    phi(e, pit->second) = one;
  }
  return phi;
}

template <class T>
bool induced_iso(const BuiltComplex<T>& A, const BuiltComplex<T>& B, std::size_t i, const T& one,
                 long* hA_out = nullptr, long* hB_out = nullptr) {
  long hA = A.h_at(i), hB = B.h_at(i);
  if (hA_out) *hA_out = hA;
  if (hB_out) *hB_out = hB;
  if (hA != hB) return false;
  if (hA == 0) return true;
  Matrix<T> zA = i < A.d.size() ? field_kernel_basis(A.d[i], one)
                                : Matrix<T>::identity(A.dims[i], one);
  Matrix<T> img = mul(restriction_map(A, B, i, one), zA);
  std::size_t rB = i > 0 ? field_rank(B.d[i - 1]) : 0;
  std::size_t induced = i > 0 ? field_rank(hstack(img, B.d[i - 1])) - rB : field_rank(img);
  return static_cast<long>(induced) == hA;
}

// ---------------------------------------------------------------------------
// Z realizations (topological universe)

struct ZBuilt {
  std::vector<std::vector<Chain>> chains;
  std::vector<std::vector<std::size_t>> offset;  // per degree, per chain: generator offset
  ZComplex z;
};

// free complex over the chains with top point inside V
ZBuilt build_z_pattern(const OpenSet& U, const std::vector<bool>& V, int top) {
  ZBuilt out;
  for (int n = 0; n <= top; ++n) out.chains.push_back(enumerate_chains(U, n));
  std::vector<std::map<Chain, int>> chain_idx(out.chains.size());
  std::vector<std::vector<int>> keep(out.chains.size());
  for (std::size_t n = 0; n < out.chains.size(); ++n) {
    std::size_t total = 0;
    out.offset.emplace_back();
    for (std::size_t c = 0; c < out.chains[n].size(); ++c) {
      chain_idx[n][out.chains[n][c]] = static_cast<int>(c);
      out.offset[n].push_back(total);
      if (V[out.chains[n][c].back()]) ++total;
    }
    out.z.terms.push_back(FpModule::free_module(total));
  }
  auto has_gen = [&](std::size_t n, int c) { return V[out.chains[n][c].back()]; };
  for (std::size_t n = 0; n + 1 < out.chains.size(); ++n) {
    IntMat m(out.z.terms[n + 1].gens, out.z.terms[n].gens);
    for (std::size_t c = 0; c < out.chains[n + 1].size(); ++c) {
      if (!has_gen(n + 1, static_cast<int>(c))) continue;
      const Chain& ch = out.chains[n + 1][c];
      for (std::size_t drop = 0; drop < ch.size(); ++drop) {
        Chain sub;
        for (std::size_t t = 0; t < ch.size(); ++t)
          if (t != drop) sub.push_back(ch[t]);
        int sc = chain_idx[n].at(sub);
        if (!has_gen(n, sc)) continue;
        Int sgn = (drop % 2 == 0) ? Int(1) : Int(-1);
        m(out.offset[n + 1][c], out.offset[n][sc]) += sgn;
      }
    }
    out.z.d.push_back(std::move(m));
  }
  return out;
}

// complex of an abelian sheaf: block per chain, restriction into the top
ZBuilt build_z_abelian(const Space& X, const OpenSet& U, const AbelianSheaf& s,
                       const ResolvedRestrictions& res, int top) {
  (void)X;
  ZBuilt out;
  for (int n = 0; n <= top; ++n) out.chains.push_back(enumerate_chains(U, n));
  std::vector<std::map<Chain, int>> chain_idx(out.chains.size());
  for (std::size_t n = 0; n < out.chains.size(); ++n) {
    std::size_t total = 0;
    std::size_t rels_total = 0;
    out.offset.emplace_back();
    for (std::size_t c = 0; c < out.chains[n].size(); ++c) {
      chain_idx[n][out.chains[n][c]] = static_cast<int>(c);
      out.offset[n].push_back(total);
      total += s.stalks[out.chains[n][c].back()].gens;
      rels_total += s.stalks[out.chains[n][c].back()].rels.cols();
    }
    IntMat rels(total, rels_total);
    std::size_t col = 0;
    for (std::size_t c = 0; c < out.chains[n].size(); ++c) {
      const FpModule& m = s.stalks[out.chains[n][c].back()];
      for (std::size_t j = 0; j < m.rels.cols(); ++j, ++col)
        for (std::size_t i = 0; i < m.gens; ++i) rels(out.offset[n][c] + i, col) = m.rels(i, j);
    }
    out.z.terms.push_back(FpModule{total, std::move(rels)});
  }
  for (std::size_t n = 0; n + 1 < out.chains.size(); ++n) {
    IntMat m(out.z.terms[n + 1].gens, out.z.terms[n].gens);
    for (std::size_t c = 0; c < out.chains[n + 1].size(); ++c) {
      const Chain& ch = out.chains[n + 1][c];
      std::size_t gtop = s.stalks[ch.back()].gens;
      for (std::size_t drop = 0; drop + 1 < ch.size(); ++drop) {
        Chain sub;
        for (std::size_t t = 0; t < ch.size(); ++t)
          if (t != drop) sub.push_back(ch[t]);
        int sc = chain_idx[n].at(sub);
        Int sgn = (drop % 2 == 0) ? Int(1) : Int(-1);
        for (std::size_t g = 0; g < gtop; ++g)
          m(out.offset[n + 1][c] + g, out.offset[n][sc] + g) += sgn;
      }
      {
        Chain sub(ch.begin(), ch.end() - 1);
        int sc = chain_idx[n].at(sub);
        const IntMat& r = res.at(sub.back(), ch.back());
        Int sgn = (ch.size() - 1) % 2 == 0 ? Int(1) : Int(-1);
        for (std::size_t i = 0; i < r.rows(); ++i)
          for (std::size_t j = 0; j < r.cols(); ++j)
            m(out.offset[n + 1][c] + i, out.offset[n][sc] + j) += sgn * r(i, j);
      }
    }
    out.z.d.push_back(std::move(m));
  }
  return out;
}

// projection chain map between abelian/Z realizations (UB inside UA)
IntMat z_restriction_map(const ZBuilt& A, const ZBuilt& B, std::size_t i) {
  IntMat phi(B.z.terms[i].gens, A.z.terms[i].gens);
  std::map<Chain, int> a_chain;
  for (std::size_t c = 0; c < A.chains[i].size(); ++c) a_chain[A.chains[i][c]] = static_cast<int>(c);
  for (std::size_t c = 0; c < B.chains[i].size(); ++c) {
    int ac = a_chain.at(B.chains[i][c]);
    std::size_t gb = (c + 1 < B.offset[i].size() ? B.offset[i][c + 1] : B.z.terms[i].gens) -
                     B.offset[i][c];
    for (std::size_t g = 0; g < gb; ++g) phi(B.offset[i][c] + g, A.offset[i][ac] + g) = 1;
  }
  return phi;
}

bool z_induced_iso(const ZBuilt& A, const ZBuilt& B, std::size_t i) {
  bool a_in = i < A.z.terms.size(), b_in = i < B.z.terms.size();
  if (!a_in && !b_in) return true;
  if (!a_in || !b_in) {
    const ZBuilt& have = a_in ? A : B;
    return module_invariants(z_cohomology_at(have.z, i).H).trivial();
  }
  std::vector<IntMat> phi(i + 1);
  phi[i] = z_restriction_map(A, B, i);
  return z_cohomology_map_iso(A.z, B.z, phi, i);
}

// ---------------------------------------------------------------------------
// Graded classes

std::vector<GradedClass> classes_from_profiles(const PlaceList& pl,
                                               const std::vector<GradedProfile>& profiles) {
  std::set<long> starts{0, 1};
  for (const GradedProfile& p : profiles) {
    if (p.empty) continue;
    if (!p.lo_unb) starts.insert(p.lo);
    if (!p.hi_unb) starts.insert(p.hi + 1);
  }
  std::vector<long> s(starts.begin(), starts.end());
  std::vector<GradedClass> out;
  {
    GradedClass c;
    c.type = GradedClass::Type::laurent;
    c.lo_unb = true;
    c.hi = s.front() - 1;
    out.push_back(c);
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    GradedClass c;
    c.type = GradedClass::Type::laurent;
    c.lo = s[i];
    if (i + 1 < s.size()) c.hi = s[i + 1] - 1;
    else c.hi_unb = true;
    out.push_back(c);
  }
  for (std::size_t v = 0; v < pl.places.size(); ++v) {
    int vi = static_cast<int>(v);
    if (vi == pl.infinity || vi == pl.zero) continue;
    GradedClass c;
    c.type = GradedClass::Type::tower;
    c.place = vi;
    out.push_back(c);
  }
  {
    GradedClass c;
    c.type = GradedClass::Type::unlisted;
    out.push_back(c);
  }
  return out;
}

bool profile_in_class(const GradedProfile& p, const GradedClass& c) {
  switch (c.type) {
    case GradedClass::Type::laurent: return p.contains_degree(c.rep_degree());
    case GradedClass::Type::tower: return p.contains_tower(c.place);
    case GradedClass::Type::unlisted: return !p.empty && p.unlisted;
  }
  return false;
}

long class_dim_multiplier(const GradedClass& c, const PlaceList& pl) {
  return c.type == GradedClass::Type::tower ? pl.places[c.place].degree() : 1;
}

// slot for the report order: declared places, then UNLISTED, then the
// infinite place, then the constant piece, then remaining intervals
std::pair<long, long> class_slot(const GradedClass& c, const PlaceList& pl) {
  const long P = static_cast<long>(pl.places.size());
  switch (c.type) {
    case GradedClass::Type::tower: return {c.place, 0};
    case GradedClass::Type::unlisted: return {P, 0};
    case GradedClass::Type::laurent: {
      if (!c.lo_unb && !c.hi_unb && c.lo == 0 && c.hi == 0) return {P + 2, 0};
      if (!c.hi_unb && c.hi <= -1) {
        long slot = pl.zero >= 0 ? pl.zero : P + 3;
        return {slot, c.lo_unb ? LONG_MIN : c.lo};
      }
      return {P + 1, c.lo_unb ? LONG_MIN : c.lo};
    }
  }
  return {P + 4, 0};
}

struct RationalView {
  RationalSheaf materialized;  // owns pattern conversions
  PieceView view;
  std::vector<std::vector<GradedProfile>> profiles;
};

RationalView make_rational_view(const Space& X, const SheafDescriptor& F) {
  RationalView rv;
  switch (F.kind) {
    case SheafDescriptor::Kind::structure:
      rv.materialized = SheafDescriptor::structure(X).rat;
      break;
    case SheafDescriptor::Kind::rational:
      rv.materialized = F.rat;
      break;
    case SheafDescriptor::Kind::pattern:
      rv.materialized = pattern_pieces(X, F.pattern);
      break;
    default:
      throw input_error("sheaf is not graded over the rational universe");
  }
  rv.view.s = &rv.materialized;
  rv.view.res = resolve_pieces(X, rv.materialized);
  rv.profiles.resize(X.poset.size());
  for (std::size_t t = 0; t < X.poset.size(); ++t)
    for (const Entry& e : rv.materialized.pieces[t])
      rv.profiles[t].push_back(profile_of(e, X.universe.places));
  return rv;
}

Filter filter_for_class(const RationalView& rv, const GradedClass& c) {
  Filter f(rv.profiles.size());
  for (std::size_t t = 0; t < rv.profiles.size(); ++t) {
    f[t].resize(rv.profiles[t].size());
    for (std::size_t j = 0; j < rv.profiles[t].size(); ++j)
      f[t][j] = profile_in_class(rv.profiles[t][j], c) ? 1 : 0;
  }
  return f;
}

std::vector<long> homology_dims_q(const BuiltComplex<Rat>& b) {
  std::vector<long> h(b.dims.size());
  for (std::size_t i = 0; i < b.dims.size(); ++i) h[i] = b.h_at(i);
  return h;
}
std::vector<long> homology_dims_p(const BuiltComplex<Fp>& b) {
  std::vector<long> h(b.dims.size());
  for (std::size_t i = 0; i < b.dims.size(); ++i) h[i] = b.h_at(i);
  return h;
}

std::vector<long> class_homology(const Space& X, const OpenSet& U, const RationalView& rv,
                                 const Filter& f, int top) {
  if (X.universe.places.field.kind == FieldSpec::Kind::Q)
    return homology_dims_q(build_filtered<Rat>(U, rv.view, f, Rat(1), top));
  return homology_dims_p(
      build_filtered<Fp>(U, rv.view, f, Fp(1, X.universe.places.field.p), top));
}

}  // namespace

StandardComplex standard_complex(const Space& X, const OpenSet& U, const SheafDescriptor& F) {
  validate_sheaf(X, F);
  StandardComplex out;
  int top = open_dim(U);
  for (int n = 0; n <= top; ++n) out.chains.push_back(enumerate_chains(U, n));

  if (X.universe.kind == UniverseKind::topological) {
    if (F.kind == SheafDescriptor::Kind::abelian) {
      ResolvedRestrictions res = resolve_restrictions(X, F.ab);
      out.is_z = true;
      out.z = build_z_abelian(X, U, F.ab, res, top).z;
      validate_z_complex(out.z);
      return out;
    }
    std::vector<bool> V =
        F.kind == SheafDescriptor::Kind::pattern ? F.pattern : std::vector<bool>(X.poset.size(), true);
    if (X.universe.z_base) {
      out.is_z = true;
      out.z = build_z_pattern(U, V, top).z;
      validate_z_complex(out.z);
    } else if (X.universe.base_field.kind == FieldSpec::Kind::Q) {
      RationalSheaf s = pattern_pieces(Space{X.poset, Universe{}, {}}, V);
      PieceView v{&s, resolve_pieces(Space{X.poset, Universe{}, {}}, s)};
      Filter f(X.poset.size(), std::vector<char>(1, 1));
      auto b = build_filtered<Rat>(U, v, f, Rat(1), top);
      out.is_field_q = true;
      out.fq.dims = b.dims;
      out.fq.d = b.d;
    } else {
      RationalSheaf s = pattern_pieces(Space{X.poset, Universe{}, {}}, V);
      PieceView v{&s, resolve_pieces(Space{X.poset, Universe{}, {}}, s)};
      Filter f(X.poset.size(), std::vector<char>(1, 1));
      auto b = build_filtered<Fp>(U, v, f, Fp(1, X.universe.base_field.p), top);
      out.is_field_p = true;
      out.fp.dims = b.dims;
      out.fp.d = b.d;
    }
    return out;
  }

  // rational universe
  if (F.kind == SheafDescriptor::Kind::pattern) {
    RationalView rv = make_rational_view(X, F);
    Filter f(X.poset.size());
    for (std::size_t t = 0; t < X.poset.size(); ++t) f[t].assign(rv.view.npieces(static_cast<int>(t)), 1);
    if (X.universe.places.field.kind == FieldSpec::Kind::Q) {
      auto b = build_filtered<Rat>(U, rv.view, f, Rat(1), top);
      out.is_field_q = true;
      out.fq.dims = b.dims;
      out.fq.d = b.d;
    } else {
      auto b = build_filtered<Fp>(U, rv.view, f, Fp(1, X.universe.places.field.p), top);
      out.is_field_p = true;
      out.fp.dims = b.dims;
      out.fp.d = b.d;
    }
    return out;
  }
  // graded sheaves stay symbolic; the class complexes are asserted by the
  // exact engine on every cohomology computation
  sheaf_cohomology(X, U, F);
  return out;
}

std::vector<long> pattern_cohomology(const Space& X, const OpenSet& U,
                                     const std::vector<bool>& V) {
  for (auto [p, q] : X.poset.hasse())
    if (V[p] && !V[q]) throw input_error("pattern set is not an up-set");
  int top = open_dim(U);
  if (top < 0) return {};
  if (X.universe.kind == UniverseKind::rational) {
    SheafDescriptor F = SheafDescriptor::pattern_sheaf(X, V);
    RationalView rv = make_rational_view(X, F);
    Filter f(X.poset.size());
    for (std::size_t t = 0; t < X.poset.size(); ++t) f[t].assign(1, 1);
    return class_homology(X, U, rv, f, top);
  }
  // topological: dims over the base field, over Q for the Z base
  RationalSheaf s = pattern_pieces(X, V);
  PieceView v{&s, resolve_pieces(X, s)};
  Filter f(X.poset.size(), std::vector<char>(1, 1));
  if (!X.universe.z_base && X.universe.base_field.kind == FieldSpec::Kind::Fp)
    return homology_dims_p(build_filtered<Fp>(U, v, f, Fp(1, X.universe.base_field.p), top));
  return homology_dims_q(build_filtered<Rat>(U, v, f, Rat(1), top));
}

CohomologyReport sheaf_cohomology(const Space& X, const OpenSet& U, const SheafDescriptor& F,
                                  CohMode mode, int window) {
  int top = open_dim(U);
  CohomologyReport rep;
  rep.top = top;

  if (X.universe.kind == UniverseKind::topological) {
    rep.zbased = X.universe.z_base;
    if (top < 0) return rep;
    if (F.kind == SheafDescriptor::Kind::abelian) {
      ResolvedRestrictions res = resolve_restrictions(X, F.ab);
      ZBuilt b = build_z_abelian(X, U, F.ab, res, top);
      rep.groups = z_complex_homology(b.z);
      return rep;
    }
    std::vector<bool> V = F.kind == SheafDescriptor::Kind::pattern
                              ? F.pattern
                              : std::vector<bool>(X.poset.size(), true);
    if (X.universe.z_base) {
      ZBuilt b = build_z_pattern(U, V, top);
      rep.groups = z_complex_homology(b.z);
      return rep;
    }
    std::vector<long> dims = pattern_cohomology(X, U, V);
    rep.pieces.resize(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i)
      if (dims[i] > 0) rep.pieces[i].push_back({"constant", dims[i], Mult::n(1)});
    return rep;
  }

  if (mode == CohMode::window) {
    WindowReport w = window_cohomology(X, U, F, window);
    rep.pieces.resize(top + 1);
    for (std::size_t i = 0; i < rep.pieces.size() && i < w.totals.size(); ++i)
      if (w.totals[i] > 0)
        rep.pieces[i].push_back(
            {std::string("window-total(N=") + std::to_string(w.N) + ")", w.totals[i], Mult::n(1)});
    return rep;
  }

  if (top < 0) return rep;

  if (F.kind == SheafDescriptor::Kind::pattern) {
    std::vector<long> dims = pattern_cohomology(X, U, F.pattern);
    rep.pieces.resize(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i)
      if (dims[i] > 0) rep.pieces[i].push_back({"constant", dims[i], Mult::n(1)});
    return rep;
  }

  RationalView rv = make_rational_view(X, F);
  const PlaceList& pl = X.universe.places;
  std::vector<GradedProfile> flat;
  for (int t : U.members)
    for (const GradedProfile& p : rv.profiles[t]) flat.push_back(p);
  std::vector<GradedClass> classes = classes_from_profiles(pl, flat);

  struct Scored {
    GradedClass cls;
    std::vector<long> h;
  };
  std::vector<Scored> scored;
  for (const GradedClass& c : classes) {
    Filter f = filter_for_class(rv, c);
    bool any = false;
    for (int t : U.members)
      for (char x : f[t]) any = any || x;
    if (!any) continue;
    std::vector<long> h = class_homology(X, U, rv, f, top);
    bool nonzero = false;
    for (long d : h) nonzero = nonzero || d != 0;
    if (nonzero) scored.push_back({c, std::move(h)});
  }
  std::stable_sort(scored.begin(), scored.end(), [&](const Scored& a, const Scored& b) {
    return class_slot(a.cls, pl) < class_slot(b.cls, pl);
  });
  rep.pieces.resize(top + 1);
  for (const Scored& s : scored) {
    long mul = class_dim_multiplier(s.cls, pl);
    for (std::size_t i = 0; i < s.h.size(); ++i)
      if (s.h[i] != 0)
        rep.pieces[i].push_back({s.cls.label(pl), s.h[i] * mul, s.cls.mult(), true, s.cls});
  }
  return rep;
}

WindowReport window_cohomology(const Space& X, const OpenSet& U, const SheafDescriptor& F,
                               int N) {
  if (X.universe.kind != UniverseKind::rational ||
      (F.kind != SheafDescriptor::Kind::structure && F.kind != SheafDescriptor::Kind::rational))
    throw input_error("window mode applies to graded sheaves over the rational universe");
  WindowReport out;
  out.N = N;
  int top = open_dim(U);
  if (top < 0) return out;
  RationalView rv = make_rational_view(X, F);
  const PlaceList& pl = X.universe.places;

  struct Level {
    std::string family;
    Filter filter;
    long copies = 1;
  };
  std::vector<Level> levels;
  for (long d = -N; d <= N; ++d) {
    Level l;
    l.family = "laurent";
    l.filter.resize(X.poset.size());
    for (std::size_t t = 0; t < X.poset.size(); ++t) {
      l.filter[t].resize(rv.profiles[t].size());
      for (std::size_t j = 0; j < rv.profiles[t].size(); ++j)
        l.filter[t][j] = rv.profiles[t][j].contains_degree(d) ? 1 : 0;
    }
    levels.push_back(std::move(l));
  }
  for (std::size_t v = 0; v < pl.places.size(); ++v) {
    int vi = static_cast<int>(v);
    if (vi == pl.infinity || vi == pl.zero) continue;
    for (int m = 1; m <= N; ++m) {
      Level l;
      l.family = "place:" + pl.places[v].name;
      l.copies = pl.places[v].degree();
      l.filter.resize(X.poset.size());
      for (std::size_t t = 0; t < X.poset.size(); ++t) {
        l.filter[t].resize(rv.profiles[t].size());
        for (std::size_t j = 0; j < rv.profiles[t].size(); ++j)
          l.filter[t][j] = rv.profiles[t][j].contains_tower(vi) ? 1 : 0;
      }
      levels.push_back(std::move(l));
    }
  }

  // per-level small complexes
  for (const Level& l : levels) {
    std::vector<long> h = class_homology(X, U, rv, l.filter, top);
    for (long& d : h) d *= l.copies;
    out.families[l.family].push_back(std::move(h));
  }
  // one big direct-sum complex for the totals
  {
    std::vector<std::size_t> dims(top + 1, 0);
    std::vector<std::vector<std::size_t>> level_dims;
    std::vector<BuiltComplex<Rat>> bq;
    std::vector<BuiltComplex<Fp>> bp;
    bool overQ = pl.field.kind == FieldSpec::Kind::Q;
    for (const Level& l : levels) {
      if (overQ) bq.push_back(build_filtered<Rat>(U, rv.view, l.filter, Rat(1), top));
      else bp.push_back(build_filtered<Fp>(U, rv.view, l.filter, Fp(1, pl.field.p), top));
    }
    auto block_dims = [&](std::size_t i) {
      std::size_t total = 0;
      for (std::size_t k = 0; k < levels.size(); ++k) {
        std::size_t d = overQ ? bq[k].dims[i] : bp[k].dims[i];
        total += d * levels[k].copies;
      }
      return total;
    };
    out.totals.assign(top + 1, 0);
    auto assemble = [&](auto& built, auto one) {
      using T = decltype(one);
      std::vector<Matrix<T>> bigd;
      for (int i = 0; i < top; ++i) {
        Matrix<T> m(block_dims(i + 1), block_dims(i));
        std::size_t ro = 0, co = 0;
        for (std::size_t k = 0; k < levels.size(); ++k) {
          const Matrix<T>& blk = built[k].d[i];
          for (long cp = 0; cp < levels[k].copies; ++cp) {
            for (std::size_t r = 0; r < blk.rows(); ++r)
              for (std::size_t c = 0; c < blk.cols(); ++c) m(ro + r, co + c) = blk(r, c);
            ro += blk.rows();
            co += blk.cols();
          }
        }
        bigd.push_back(std::move(m));
      }
      std::vector<std::size_t> ranks(bigd.size());
      for (std::size_t i = 0; i < bigd.size(); ++i) ranks[i] = field_rank(bigd[i]);
      for (int i = 0; i <= top; ++i) {
        long h = static_cast<long>(block_dims(i));
        if (i < top) h -= static_cast<long>(ranks[i]);
        if (i > 0) h -= static_cast<long>(ranks[i - 1]);
        out.totals[i] = h;
      }
    };
    if (overQ) assemble(bq, Rat(1));
    else assemble(bp, Fp(1, pl.field.p));
  }
  // tail stabilization: the three outermost Laurent levels on each side agree
  const auto& laur = out.families["laurent"];
  auto eq3 = [&](std::size_t a) {
    return laur[a] == laur[a + 1] && laur[a + 1] == laur[a + 2];
  };
  if (laur.size() >= 3) out.stabilized = eq3(0) && eq3(laur.size() - 3);
  return out;
}

bool is_acyclic(const Space& X, const OpenSet& U) {
  CohomologyReport r = sheaf_cohomology(X, U, SheafDescriptor::structure(X));
  for (std::size_t i = 1; i < r.degrees(); ++i)
    if (!r.degree_trivial(i)) return false;
  return true;
}

BaseChangeResult base_change_isos(const Space& X, const OpenSet& UA, const OpenSet& UB,
                                  const PoleSet& delta, const SheafDescriptor& F,
                                  int only_degree) {
  BaseChangeResult res;
  int top = open_dim(UA);
  if (top < 0) return res;

  if (X.universe.kind == UniverseKind::topological) {
    ZBuilt A, B;
    if (F.kind == SheafDescriptor::Kind::abelian) {
      ResolvedRestrictions rr = resolve_restrictions(X, F.ab);
      A = build_z_abelian(X, UA, F.ab, rr, top);
      B = build_z_abelian(X, UB, F.ab, rr, top);
    } else {
      std::vector<bool> V = F.kind == SheafDescriptor::Kind::pattern
                                ? F.pattern
                                : std::vector<bool>(X.poset.size(), true);
      A = build_z_pattern(UA, V, top);
      B = build_z_pattern(UB, V, top);
    }
    for (int i = 0; i <= top; ++i) {
      if (only_degree >= 0 && i != only_degree) continue;
      if (!z_induced_iso(A, B, static_cast<std::size_t>(i))) {
        res.ok = false;
        res.degree = i;
        res.cls = "constant";
        res.detail = "restriction not an isomorphism on H^" + std::to_string(i);
        return res;
      }
    }
    return res;
  }

  RationalView rv = make_rational_view(X, F);
  const PlaceList& pl = X.universe.places;
  // localized profiles upstairs
  std::vector<std::vector<GradedProfile>> loc(X.poset.size());
  for (int t : UA.members) {
    loc[t].resize(rv.materialized.pieces[t].size());
    for (std::size_t j = 0; j < rv.materialized.pieces[t].size(); ++j) {
      const Entry& e = rv.materialized.pieces[t][j];
      Entry le = entry_localize(e, delta, pl);  // throws when outside the graded family
      loc[t][j] = profile_of(le, pl);
    }
  }
  std::vector<GradedProfile> flat;
  for (int t : UA.members)
    for (const GradedProfile& p : loc[t]) flat.push_back(p);
  for (int t : UB.members)
    for (const GradedProfile& p : rv.profiles[t]) flat.push_back(p);
  std::vector<GradedClass> classes = classes_from_profiles(pl, flat);

  for (const GradedClass& c : classes) {
    Filter fa(X.poset.size()), fb(X.poset.size());
    for (std::size_t t = 0; t < X.poset.size(); ++t) {
      fa[t].assign(rv.materialized.pieces[t].size(), 0);
      fb[t].assign(rv.materialized.pieces[t].size(), 0);
    }
    for (int t : UA.members)
      for (std::size_t j = 0; j < loc[t].size(); ++j)
        fa[t][j] = profile_in_class(loc[t][j], c) ? 1 : 0;
    for (int t : UB.members)
      for (std::size_t j = 0; j < rv.profiles[t].size(); ++j)
        fb[t][j] = profile_in_class(rv.profiles[t][j], c) ? 1 : 0;

    auto run = [&](auto one) -> std::pair<bool, int> {
      using T = decltype(one);
      BuiltComplex<T> A = build_filtered<T>(UA, rv.view, fa, one, top);
      BuiltComplex<T> B = build_filtered<T>(UB, rv.view, fb, one, top);
      for (int i = 0; i <= top; ++i) {
        if (only_degree >= 0 && i != only_degree) continue;
        if (!induced_iso(A, B, static_cast<std::size_t>(i), one)) return {false, i};
      }
      return {true, -1};
    };
    std::pair<bool, int> ok =
        pl.field.kind == FieldSpec::Kind::Q ? run(Rat(1)) : run(Fp(1, pl.field.p));
    if (!ok.first) {
      res.ok = false;
      res.degree = ok.second;
      res.cls = c.label(pl);
      res.detail = "base change fails on class " + c.label(pl) + " in degree " +
                   std::to_string(ok.second);
      return res;
    }
  }
  return res;
}

HigherDirectImage higher_direct_image(const Morphism& f, const SheafDescriptor& F, int degree,
                                      bool paranoid) {
  validate_sheaf(f.source, F);
  HigherDirectImage out;
  out.degree = degree;
  const Space& Y = f.target;
  std::vector<OpenSet> pre;
  for (std::size_t y = 0; y < Y.poset.size(); ++y)
    pre.push_back(f.preimage(minimal_open(Y.poset, static_cast<int>(y))));
  for (std::size_t y = 0; y < Y.poset.size(); ++y) {
    CohomologyReport full = sheaf_cohomology(f.source, pre[y], F);
    CohomologyReport slice;
    slice.zbased = full.zbased;
    slice.top = full.top;
    if (full.zbased) {
      slice.groups.resize(degree + 1);
      if (static_cast<std::size_t>(degree) < full.groups.size())
        slice.groups[degree] = full.groups[degree];
    } else {
      slice.pieces.resize(degree + 1);
      if (static_cast<std::size_t>(degree) < full.pieces.size())
        slice.pieces[degree] = full.pieces[degree];
    }
    out.stalk_reports.push_back(std::move(slice));
  }
  std::vector<std::pair<int, int>> edges;
  if (paranoid) {
    for (std::size_t a = 0; a < Y.poset.size(); ++a)
      for (std::size_t b = 0; b < Y.poset.size(); ++b)
        if (Y.poset.less(static_cast<int>(a), static_cast<int>(b)))
          edges.push_back({static_cast<int>(a), static_cast<int>(b)});
  } else {
    edges = Y.poset.hasse();
  }
  for (auto [a, b] : edges) {
    PoleSet delta = Y.rational() ? Y.poles(b).minus(Y.poles(a)) : PoleSet{};
    BaseChangeResult r = base_change_isos(f.source, pre[a], pre[b], delta, F, degree);
    if (!r.ok) {
      out.qc = false;
      out.counterexample = "edge " + Y.poset.label(a) + " <= " + Y.poset.label(b) + ": " +
                           r.detail;
      return out;
    }
  }
  return out;
}

}  // namespace finsp
