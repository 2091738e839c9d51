#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace finsp {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

class unrepresentable_error : public std::runtime_error {
 public:
  explicit unrepresentable_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Element of F_p, p prime, p <= 2^31. A default-constructed value has p == 0
// and acts as a modulus-free zero so that zero-initialized containers work;
// arithmetic adopts the modulus of the other operand.
struct Fp {
  std::uint64_t v = 0;
  std::uint64_t p = 0;

  Fp() = default;
  Fp(long long x, std::uint64_t mod) : p(mod) {
    long long r = x % static_cast<long long>(mod);
    if (r < 0) r += static_cast<long long>(mod);
    v = static_cast<std::uint64_t>(r);
  }
  static Fp from_int(const Int& x, std::uint64_t mod) {
    Int r = x % Int(mod);
    if (r < 0) r += Int(mod);
    return Fp(static_cast<long long>(r), mod);
  }

  bool is_zero() const { return v == 0; }

  friend std::uint64_t join_mod(const Fp& a, const Fp& b) {
    if (a.p == 0) return b.p;
    if (b.p != 0 && a.p != b.p) throw std::logic_error("Fp modulus mismatch");
    return a.p;
  }
  friend Fp operator+(const Fp& a, const Fp& b) {
    std::uint64_t m = join_mod(a, b);
    if (m == 0) return Fp();
    return Fp{(a.v + b.v) % m, m, de_tag{}};
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    std::uint64_t m = join_mod(a, b);
    if (m == 0) return Fp();
    return Fp{(a.v + m - b.v) % m, m, de_tag{}};
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    std::uint64_t m = join_mod(a, b);
    if (m == 0) return Fp();
    return Fp{(a.v * b.v) % m, m, de_tag{}};
  }
  Fp operator-() const { return p == 0 ? Fp() : Fp{(p - v) % p, p, de_tag{}}; }
  Fp inv() const {
    if (v == 0 || p == 0) throw std::logic_error("Fp: inverse of zero");
    // extended euclid
    long long a = static_cast<long long>(v), m = static_cast<long long>(p);
    long long x0 = 1, x1 = 0, r0 = a, r1 = m;
    while (r1 != 0) {
      long long q = r0 / r1;
      long long t = r0 - q * r1; r0 = r1; r1 = t;
      t = x0 - q * x1; x0 = x1; x1 = t;
    }
    long long x = x0 % m; if (x < 0) x += m;
    return Fp{static_cast<std::uint64_t>(x), p, de_tag{}};
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  friend bool operator==(const Fp& a, const Fp& b) {
    if (a.v == 0 && b.v == 0) return true;
    return a.v == b.v && (a.p == b.p || a.p == 0 || b.p == 0);
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

 private:
  struct de_tag {};
  Fp(std::uint64_t val, std::uint64_t mod, de_tag) : v(val), p(mod) {}
};

inline bool is_zero(const Rat& a) { return a == 0; }
inline bool is_zero(const Int& a) { return a == 0; }
inline bool is_zero(const Fp& a) { return a.is_zero(); }

inline Rat field_one(const Rat&) { return Rat(1); }
inline Fp field_one(const Fp& ctx) {
  if (ctx.p == 0) throw std::logic_error("Fp one: no modulus");
  return Fp(1, ctx.p);
}

inline std::string to_string(const Rat& a) { return a.str(); }
inline std::string to_string(const Int& a) { return a.str(); }
inline std::string to_string(const Fp& a) { return std::to_string(a.v); }

}  // namespace finsp
