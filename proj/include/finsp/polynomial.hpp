#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "finsp/numbers.hpp"

namespace finsp {

struct FieldSpec {
  enum class Kind { Q, Fp };
  Kind kind = Kind::Q;
  std::uint64_t p = 0;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.kind == b.kind && a.p == b.p;
  }
  std::string name() const {
    return kind == Kind::Q ? std::string("Q") : "F" + std::to_string(p);
  }
};

// Univariate polynomial, little-endian coefficients, normalized so that the
// leading coefficient is nonzero (zero polynomial has no coefficients).
template <class K>
struct Poly {
  std::vector<K> c;

  Poly() = default;
  explicit Poly(std::vector<K> coeffs) : c(std::move(coeffs)) { normalize(); }
  static Poly constant(const K& a) { return Poly(std::vector<K>{a}); }
  static Poly x(const K& one) { return Poly(std::vector<K>{one - one, one}); }

  void normalize() {
    while (!c.empty() && is_zero(c.back())) c.pop_back();
  }
  bool zero() const { return c.empty(); }
  long degree() const { return static_cast<long>(c.size()) - 1; }  // deg 0 = -1
  const K& lead() const { return c.back(); }
  bool is_constant() const { return c.size() <= 1; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
};

template <class K>
Poly<K> operator+(const Poly<K>& a, const Poly<K>& b) {
  std::vector<K> c(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
  return Poly<K>(std::move(c));
}

template <class K>
Poly<K> operator-(const Poly<K>& a) {
  std::vector<K> c(a.c.size());
  for (std::size_t i = 0; i < a.c.size(); ++i) c[i] = -a.c[i];
  return Poly<K>(std::move(c));
}

template <class K>
Poly<K> operator-(const Poly<K>& a, const Poly<K>& b) {
  return a + (-b);
}

template <class K>
Poly<K> operator*(const Poly<K>& a, const Poly<K>& b) {
  if (a.zero() || b.zero()) return Poly<K>();
  std::vector<K> c(a.c.size() + b.c.size() - 1);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (is_zero(a.c[i])) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
  }
  return Poly<K>(std::move(c));
}

template <class K>
Poly<K> scale(const Poly<K>& a, const K& k) {
  std::vector<K> c(a.c.size());
  for (std::size_t i = 0; i < a.c.size(); ++i) c[i] = k * a.c[i];
  return Poly<K>(std::move(c));
}

template <class K>
std::pair<Poly<K>, Poly<K>> divmod(const Poly<K>& a, const Poly<K>& b) {
  if (b.zero()) throw std::logic_error("poly division by zero");
  Poly<K> r = a;
  if (a.degree() < b.degree()) return {Poly<K>(), r};
  std::vector<K> q(a.degree() - b.degree() + 1);
  while (!r.zero() && r.degree() >= b.degree()) {
    K f = r.lead() / b.lead();
    std::size_t shift = r.degree() - b.degree();
    q[shift] = f;
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[shift + i] -= f * b.c[i];
    r.normalize();
  }
  return {Poly<K>(std::move(q)), r};
}

template <class K>
Poly<K> monic(const Poly<K>& a) {
  if (a.zero()) return a;
  K inv = field_one(a.lead()) / a.lead();
  return scale(a, inv);
}

template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
  while (!b.zero()) {
    Poly<K> r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.zero() ? a : monic(a);
}

// g = gcd(a,b) together with u,v so that u*a + v*b = g.
template <class K>
void poly_ext_gcd(const Poly<K>& a, const Poly<K>& b, Poly<K>& g, Poly<K>& u, Poly<K>& v) {
  if (a.zero() && b.zero()) { g = u = v = Poly<K>(); return; }
  Poly<K> r0 = a, r1 = b;
  Poly<K> s0 = Poly<K>::constant(field_one(a.zero() ? b.lead() : a.lead()));
  Poly<K> s1, t0, t1 = s0;
  while (!r1.zero()) {
    auto [q, r] = divmod(r0, r1);
    Poly<K> s = s0 - q * s1;
    Poly<K> t = t0 - q * t1;
    r0 = std::move(r1); r1 = std::move(r);
    s0 = std::move(s1); s1 = std::move(s);
    t0 = std::move(t1); t1 = std::move(t);
  }
  if (r0.zero()) { g = r0; u = s0; v = t0; return; }
  K inv = field_one(r0.lead()) / r0.lead();
  g = scale(r0, inv);
  u = scale(s0, inv);
  v = scale(t0, inv);
}

template <class K>
Poly<K> poly_pow_mod(Poly<K> base, Int e, const Poly<K>& mod) {
  Poly<K> acc = Poly<K>::constant(field_one(mod.lead()));
  base = divmod(base, mod).second;
  while (e > 0) {
    if ((e & 1) != 0) acc = divmod(acc * base, mod).second;
    base = divmod(base * base, mod).second;
    e >>= 1;
  }
  return acc;
}

using PolyQ = Poly<Rat>;
using PolyP = Poly<Fp>;

std::string poly_to_string(const PolyQ& p);
std::string poly_to_string(const PolyP& p);

// Parses "x^2 - 2x + 3/4" style input over the given field.
PolyQ parse_poly_q(const std::string& text);
PolyP parse_poly_p(const std::string& text, std::uint64_t p);

// Rabin's test; valid for all degrees.
bool irreducible_fp(const PolyP& f);

// Exact decision for degree <= 3 over Q (quadratic: discriminant square test;
// cubic: rational root search). Throws input_error with an attestation hint
// when the decision is out of reach (degree >= 4, or a cubic whose
// coefficients cannot be factored within the trial-division bound).
bool irreducible_q(const PolyQ& f, bool attested);

}  // namespace finsp
