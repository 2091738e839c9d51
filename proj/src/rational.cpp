#include "finsp/rational.hpp"

#include <algorithm>

namespace finsp {

int PlaceList::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < places.size(); ++i)
    if (places[i].name == name) return static_cast<int>(i);
  for (std::size_t i = 0; i < places.size(); ++i)
    if (places[i].poly_string() == name) return static_cast<int>(i);
  if (name == "inf" || name == "infinity") return infinity;
  return -1;
}

int PlaceList::index_or_throw(const std::string& name) const {
  int i = index_of(name);
  if (i < 0) throw input_error("unknown place: " + name);
  return i;
}

Place PlaceList::make_finite_place(const std::string& poly_text, const std::string& name,
                                   bool attested) const {
  Place p;
  p.at_infinity = false;
  if (field.kind == FieldSpec::Kind::Q) {
    PolyQ f = parse_poly_q(poly_text);
    if (f.degree() < 1) throw input_error("place polynomial must be nonconstant: " + poly_text);
    if (f.lead() != 1) throw input_error("place polynomial must be monic: " + poly_text);
    if (!irreducible_q(f, attested))
      throw input_error("place polynomial is reducible: " + poly_text);
    p.poly = std::move(f);
  } else {
    PolyP f = parse_poly_p(poly_text, field.p);
    if (f.degree() < 1) throw input_error("place polynomial must be nonconstant: " + poly_text);
    if (f.lead().v != 1) throw input_error("place polynomial must be monic: " + poly_text);
    if (!irreducible_fp(f)) throw input_error("place polynomial is reducible: " + poly_text);
    p.poly = std::move(f);
  }
  p.name = name.empty() ? p.poly_string() : name;
  return p;
}

void PlaceList::add_place(Place p) {
  for (const Place& q : places) {
    if (q == p) throw input_error("duplicate place: " + p.name);
    if (q.name == p.name) throw input_error("duplicate place name: " + p.name);
  }
  if (p.at_infinity) {
    if (infinity >= 0) throw input_error("duplicate infinite place");
    infinity = static_cast<int>(places.size());
  } else {
    bool is_x = false;
    if (std::holds_alternative<PolyQ>(p.poly)) {
      const PolyQ& f = std::get<PolyQ>(p.poly);
      is_x = f.degree() == 1 && f.c[0] == 0 && f.c[1] == 1;
    } else if (std::holds_alternative<PolyP>(p.poly)) {
      const PolyP& f = std::get<PolyP>(p.poly);
      is_x = f.degree() == 1 && f.c[0].v == 0 && f.c[1].v == 1;
    }
    if (is_x) zero = static_cast<int>(places.size());
  }
  places.push_back(std::move(p));
}

std::string pole_set_to_string(const PoleSet& t, const PlaceList& pl) {
  if (t.all) return "ALL";
  std::string out = "{";
  bool first = true;
  for (int i : t.s) {
    if (!first) out += ",";
    out += pl.places[i].name;
    first = false;
  }
  return out + "}";
}

template <class K>
const Poly<K>& place_poly(const PlaceList& pl, int i) {
  return std::get<Poly<K>>(pl.places[i].poly);
}
template const PolyQ& place_poly<Rat>(const PlaceList&, int);
template const PolyP& place_poly<Fp>(const PlaceList&, int);

namespace {

template <class K>
void trim_levels(std::vector<Poly<K>>& levels) {
  while (!levels.empty() && levels.back().zero()) levels.pop_back();
}

}  // namespace

template <class K>
RatFunc<K> pf_decompose(const Poly<K>& num, const Poly<K>& den, const PlaceList& pl) {
  if (den.zero()) throw input_error("rational element: zero denominator");
  RatFunc<K> out;
  auto [q, r] = divmod(num, den);
  out.head = q;
  if (r.zero()) return out;

  // factor the denominator over the declared places
  Poly<K> rest = den;
  std::map<int, long> mult;
  for (std::size_t i = 0; i < pl.places.size(); ++i) {
    if (pl.places[i].at_infinity) continue;
    const Poly<K>& v = place_poly<K>(pl, static_cast<int>(i));
    while (true) {
      auto [qv, rv] = divmod(rest, v);
      if (!rv.zero()) break;
      rest = qv;
      ++mult[static_cast<int>(i)];
    }
  }
  if (rest.degree() > 0)
    throw input_error("rational element has a pole outside the declared places: denominator factor " +
                      std::string("of degree ") + std::to_string(rest.degree()));
  // absorb the constant cofactor
  K cinv = field_one(rest.lead()) / rest.c[0];
  Poly<K> rr = scale(r, cinv);
  Poly<K> reduced_den = Poly<K>::constant(field_one(den.lead()));
  for (auto& [i, m] : mult)
    for (long k = 0; k < m; ++k) reduced_den = reduced_den * place_poly<K>(pl, i);

  for (auto& [i, m] : mult) {
    const Poly<K>& v = place_poly<K>(pl, i);
    Poly<K> vm = Poly<K>::constant(field_one(v.lead()));
    for (long k = 0; k < m; ++k) vm = vm * v;
    Poly<K> cof = divmod(reduced_den, vm).first;
    Poly<K> g, a, b;
    poly_ext_gcd(vm, cof, g, a, b);  // a*vm + b*cof = 1
    if (g.degree() != 0) throw std::logic_error("partial fractions: cofactors not coprime");
    Poly<K> comp = divmod(rr * b, vm).second;  // component numerator over v^m
    // base-v digits: comp = sum digit_j v^j, digit_j over v^{m-j}
    std::vector<Poly<K>> levels(m);
    Poly<K> cur = comp;
    for (long j = 0; j < m; ++j) {
      auto [qd, rd] = divmod(cur, v);
      levels[m - 1 - j] = rd;
      cur = qd;
    }
    trim_levels(levels);
    if (!levels.empty()) out.polar[i] = std::move(levels);
  }
  return out;
}

template <class K>
std::pair<Poly<K>, Poly<K>> pf_recompose(const RatFunc<K>& f, const PlaceList& pl) {
  K one_k = [&]() -> K {
    if constexpr (std::is_same_v<K, Fp>) return Fp(1, pl.field.p);
    else return Rat(1);
  }();
  Poly<K> den = Poly<K>::constant(one_k);
  for (auto& [i, levels] : f.polar) {
    const Poly<K>& v = place_poly<K>(pl, i);
    for (std::size_t k = 0; k < levels.size(); ++k) den = den * v;
  }
  Poly<K> num = f.head * den;
  for (auto& [i, levels] : f.polar) {
    const Poly<K>& v = place_poly<K>(pl, i);
    Poly<K> vm = Poly<K>::constant(one_k);
    for (std::size_t k = 0; k < levels.size(); ++k) vm = vm * v;
    Poly<K> cof = divmod(den, vm).first;
    // levels[m-1-j] corresponds to digit v^j
    Poly<K> comp;
    for (std::size_t m = 1; m <= levels.size(); ++m) {
      Poly<K> term = levels[m - 1];
      for (std::size_t k = 0; k < levels.size() - m; ++k) term = term * v;
      comp = comp + term;
    }
    num = num + comp * cof;
  }
  return {num, den};
}

template <class K>
RatFunc<K> pf_add(const RatFunc<K>& a, const RatFunc<K>& b) {
  RatFunc<K> out;
  out.head = a.head + b.head;
  out.polar = a.polar;
  for (auto& [i, levels] : b.polar) {
    auto& dst = out.polar[i];
    if (dst.size() < levels.size()) dst.resize(levels.size());
    for (std::size_t k = 0; k < levels.size(); ++k) dst[k] = dst[k] + levels[k];
    trim_levels(dst);
    if (dst.empty()) out.polar.erase(i);
  }
  return out;
}

template <class K>
RatFunc<K> pf_neg(const RatFunc<K>& a) {
  RatFunc<K> out;
  out.head = -a.head;
  for (auto& [i, levels] : a.polar) {
    std::vector<Poly<K>> neg;
    for (auto& l : levels) neg.push_back(-l);
    out.polar[i] = std::move(neg);
  }
  return out;
}

template <class K>
RatFunc<K> pf_mul(const RatFunc<K>& a, const RatFunc<K>& b, const PlaceList& pl) {
  auto [na, da] = pf_recompose(a, pl);
  auto [nb, db] = pf_recompose(b, pl);
  return pf_decompose(na * nb, da * db, pl);
}

template <class K>
PoleSet pf_poles(const RatFunc<K>& a, const PlaceList& pl) {
  PoleSet t;
  for (auto& [i, levels] : a.polar)
    if (!levels.empty()) t.s.insert(i);
  if (a.head.degree() >= 1) {
    if (pl.infinity < 0)
      throw input_error("element has a pole at infinity but no infinite place is declared");
    t.s.insert(pl.infinity);
  }
  return t;
}

template <class K>
bool pf_member(const RatFunc<K>& a, const PoleSet& T, const PlaceList& pl) {
  if (T.all) return true;
  if (a.head.degree() >= 1 && (pl.infinity < 0 || !T.contains(pl.infinity))) return false;
  for (auto& [i, levels] : a.polar)
    if (!levels.empty() && !T.contains(i)) return false;
  return true;
}

template <class K>
RatFunc<K> parse_rational_elem(const std::string& text, const PlaceList& pl) {
  int depth = 0;
  std::size_t slash = std::string::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    else if (text[i] == ')') --depth;
    else if (text[i] == '/' && depth == 0) {
      // distinguish the fraction bar from coefficient fractions: a
      // coefficient slash is always surrounded by digits
      bool digit_l = i > 0 && std::isdigit(static_cast<unsigned char>(text[i - 1]));
      bool digit_r = i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]));
      if (!(digit_l && digit_r)) {
        if (slash != std::string::npos) throw input_error("rational element: more than one '/'");
        slash = i;
      } else if (slash == std::string::npos) {
        slash = i;  // "1/x" style still splits here when no other slash shows up
      }
    }
  }
  auto strip = [](std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    while (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
      int d = 0;
      bool wraps = true;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++d;
        if (s[i] == ')') --d;
        if (d == 0 && i + 1 < s.size()) { wraps = false; break; }
      }
      if (!wraps) break;
      s = s.substr(1, s.size() - 2);
    }
    return s;
  };
  auto parse_side = [&](const std::string& s) -> Poly<K> {
    if constexpr (std::is_same_v<K, Fp>) return parse_poly_p(s, pl.field.p);
    else return parse_poly_q(s);
  };
  if (slash == std::string::npos) {
    Poly<K> num = parse_side(strip(text));
    return pf_decompose(num, Poly<K>::constant(field_one(num.zero() ? parse_side("1").lead() : num.lead())), pl);
  }
  Poly<K> num = parse_side(strip(text.substr(0, slash)));
  Poly<K> den = parse_side(strip(text.substr(slash + 1)));
  return pf_decompose(num, den, pl);
}

template <class K>
std::string rational_elem_to_string(const RatFunc<K>& f, const PlaceList& pl) {
  auto [num, den] = pf_recompose(f, pl);
  if (den.is_constant()) {
    K c = den.zero() ? K() : den.c[0];
    Poly<K> scaled = scale(num, field_one(c) / c);
    return poly_to_string(scaled);
  }
  return "(" + poly_to_string(num) + ")/(" + poly_to_string(den) + ")";
}

template struct RatFunc<Rat>;
template struct RatFunc<Fp>;

template RatFunc<Rat> pf_decompose(const PolyQ&, const PolyQ&, const PlaceList&);
template RatFunc<Fp> pf_decompose(const PolyP&, const PolyP&, const PlaceList&);
template std::pair<PolyQ, PolyQ> pf_recompose(const RatFunc<Rat>&, const PlaceList&);
template std::pair<PolyP, PolyP> pf_recompose(const RatFunc<Fp>&, const PlaceList&);
template RatFunc<Rat> pf_add(const RatFunc<Rat>&, const RatFunc<Rat>&);
template RatFunc<Fp> pf_add(const RatFunc<Fp>&, const RatFunc<Fp>&);
template RatFunc<Rat> pf_neg(const RatFunc<Rat>&);
template RatFunc<Fp> pf_neg(const RatFunc<Fp>&);
template RatFunc<Rat> pf_mul(const RatFunc<Rat>&, const RatFunc<Rat>&, const PlaceList&);
template RatFunc<Fp> pf_mul(const RatFunc<Fp>&, const RatFunc<Fp>&, const PlaceList&);
template PoleSet pf_poles(const RatFunc<Rat>&, const PlaceList&);
template PoleSet pf_poles(const RatFunc<Fp>&, const PlaceList&);
template bool pf_member(const RatFunc<Rat>&, const PoleSet&, const PlaceList&);
template bool pf_member(const RatFunc<Fp>&, const PoleSet&, const PlaceList&);
template RatFunc<Rat> parse_rational_elem(const std::string&, const PlaceList&);
template RatFunc<Fp> parse_rational_elem(const std::string&, const PlaceList&);
template std::string rational_elem_to_string(const RatFunc<Rat>&, const PlaceList&);
template std::string rational_elem_to_string(const RatFunc<Fp>&, const PlaceList&);

}  // namespace finsp
