#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "finsp/polynomial.hpp"

namespace finsp {

// A closed point of the projective line over k: a monic irreducible
// polynomial, or the place at infinity.
struct Place {
  bool at_infinity = false;
  std::string name;  // reference name; defaults to the polynomial string or "inf"
  std::variant<std::monostate, PolyQ, PolyP> poly;

  long degree() const {
    if (at_infinity) return 1;
    if (std::holds_alternative<PolyQ>(poly)) return std::get<PolyQ>(poly).degree();
    return std::get<PolyP>(poly).degree();
  }
  std::string poly_string() const {
    if (at_infinity) return "inf";
    if (std::holds_alternative<PolyQ>(poly)) return poly_to_string(std::get<PolyQ>(poly));
    return poly_to_string(std::get<PolyP>(poly));
  }
  friend bool operator==(const Place& a, const Place& b) {
    return a.at_infinity == b.at_infinity && a.poly == b.poly;
  }
};

// The declared places of a universe, over Q or F_p.
struct PlaceList {
  FieldSpec field;
  std::vector<Place> places;
  int infinity = -1;  // index of the infinite place, -1 if undeclared
  int zero = -1;      // index of the place (x), -1 if undeclared

  // name may be a declared name or a polynomial string
  int index_of(const std::string& name) const;
  int index_or_throw(const std::string& name) const;

  // Builds a place from JSON-ish fields, verifying irreducibility.
  Place make_finite_place(const std::string& poly_text, const std::string& name, bool attested) const;
  void add_place(Place p);

  friend bool operator==(const PlaceList& a, const PlaceList& b) {
    return a.field == b.field && a.places == b.places;
  }
};

// A set of poles: either a finite subset of the declared places, or ALL
// (the full function field k(x)).
struct PoleSet {
  bool all = false;
  std::set<int> s;

  static PoleSet make_all() { PoleSet t; t.all = true; return t; }
  bool empty() const { return !all && s.empty(); }
  bool contains(int i) const { return all || s.count(i) > 0; }
  bool subset_of(const PoleSet& o) const {
    if (o.all) return true;
    if (all) return false;
    return std::includes(o.s.begin(), o.s.end(), s.begin(), s.end());
  }
  PoleSet unite(const PoleSet& o) const {
    if (all || o.all) return make_all();
    PoleSet t;
    t.s = s;
    t.s.insert(o.s.begin(), o.s.end());
    return t;
  }
  PoleSet intersect(const PoleSet& o) const {
    if (all) return o;
    if (o.all) return *this;
    PoleSet t;
    for (int i : s)
      if (o.s.count(i)) t.s.insert(i);
    return t;
  }
  // Set difference used for base-change localization. ALL minus a finite set
  // is kept as ALL: in every obligation the result is only ever united into
  // pole sets that already contain the subtracted part, where this is exact.
  PoleSet minus(const PoleSet& o) const {
    if (o.all) return PoleSet{};
    if (all) return make_all();
    PoleSet t;
    for (int i : s)
      if (!o.s.count(i)) t.s.insert(i);
    return t;
  }
  friend bool operator==(const PoleSet& a, const PoleSet& b) {
    if (a.all || b.all) return a.all == b.all;
    return a.s == b.s;
  }
  friend bool operator<(const PoleSet& a, const PoleSet& b) {
    if (a.all != b.all) return b.all;
    return a.s < b.s;
  }
};

std::string pole_set_to_string(const PoleSet& t, const PlaceList& pl);

// Rational function in canonical partial-fraction form over a place list:
// polynomial head plus, per finite place v, numerators over v^m with
// deg < deg v, the representation the pattern grading is read from.
template <class K>
struct RatFunc {
  Poly<K> head;
  std::map<int, std::vector<Poly<K>>> polar;  // place -> levels; levels[m-1] over v^m

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.head == b.head && a.polar == b.polar;
  }
};

template <class K>
const Poly<K>& place_poly(const PlaceList& pl, int i);

template <class K>
RatFunc<K> pf_decompose(const Poly<K>& num, const Poly<K>& den, const PlaceList& pl);

template <class K>
std::pair<Poly<K>, Poly<K>> pf_recompose(const RatFunc<K>& f, const PlaceList& pl);

template <class K>
RatFunc<K> pf_add(const RatFunc<K>& a, const RatFunc<K>& b);

template <class K>
RatFunc<K> pf_neg(const RatFunc<K>& a);

template <class K>
RatFunc<K> pf_mul(const RatFunc<K>& a, const RatFunc<K>& b, const PlaceList& pl);

template <class K>
PoleSet pf_poles(const RatFunc<K>& a, const PlaceList& pl);

// Membership in the stalk ring R_T: every pole confined to T, where a
// nonconstant polynomial head needs the infinite place.
template <class K>
bool pf_member(const RatFunc<K>& a, const PoleSet& T, const PlaceList& pl);

// "num/den" with the slash at paren depth 0; either side a polynomial.
template <class K>
RatFunc<K> parse_rational_elem(const std::string& text, const PlaceList& pl);

template <class K>
std::string rational_elem_to_string(const RatFunc<K>& f, const PlaceList& pl);

extern template struct RatFunc<Rat>;
extern template struct RatFunc<Fp>;

}  // namespace finsp
