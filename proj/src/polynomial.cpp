#include "finsp/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace finsp {

namespace {

struct Term {
  std::string coeff;  // empty means 1
  long exp = 0;
  bool negative = false;
};

// Splits "x^2 - 2x + 3/4" into sign/coefficient/exponent terms.
std::vector<Term> scan_terms(const std::string& text) {
  std::vector<Term> terms;
  std::size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  skip_ws();
  if (i == text.size()) throw input_error("polynomial: empty input");
  bool first = true;
  while (i < text.size()) {
    Term t;
    skip_ws();
    if (!first || text[i] == '+' || text[i] == '-') {
      if (i >= text.size() || (text[i] != '+' && text[i] != '-')) {
        if (first) { /* leading term without sign */ }
        else throw input_error("polynomial: expected '+' or '-' near '" + text.substr(i) + "'");
      }
      if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        t.negative = text[i] == '-';
        ++i;
      }
    }
    first = false;
    skip_ws();
    std::string num;
    while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) {
      num.push_back(text[i]);
      ++i;
    }
    skip_ws();
    if (i < text.size() && text[i] == '*') { ++i; skip_ws(); }
    bool has_x = i < text.size() && text[i] == 'x';
    if (has_x) {
      ++i;
      skip_ws();
      t.exp = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip_ws();
        std::string e;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) { e.push_back(text[i]); ++i; }
        if (e.empty()) throw input_error("polynomial: missing exponent");
        t.exp = std::strtol(e.c_str(), nullptr, 10);
      }
    }
    if (num.empty() && !has_x) throw input_error("polynomial: malformed term in '" + text + "'");
    t.coeff = num;
    terms.push_back(std::move(t));
    skip_ws();
  }
  return terms;
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) return Rat(1);
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  Int num(s.substr(0, slash)), den(s.substr(slash + 1));
  if (den == 0) throw input_error("polynomial: zero denominator");
  return Rat(num, den);
}

// |n| factored by trial division; returns false if a cofactor > bound remains.
bool factor_small(Int n, std::vector<Int>& primes) {
  if (n < 0) n = -n;
  if (n == 0) return false;
  for (Int d = 2; d * d <= n && d <= 1000000; ++d) {
    while (n % d == 0) {
      primes.push_back(d);
      n /= d;
    }
  }
  if (n > 1) {
    if (n > 1000000) return false;
    primes.push_back(n);
  }
  return true;
}

std::vector<Int> divisors_from_factors(const std::vector<Int>& primes) {
  std::vector<Int> divs{Int(1)};
  Int last(0);
  std::size_t run = 0;
  // primes sorted ascending from trial division; group repeats
  std::vector<std::pair<Int, std::size_t>> grouped;
  for (const Int& p : primes) {
    if (p == last) ++grouped.back().second;
    else { grouped.push_back({p, 1}); last = p; }
  }
  (void)run;
  for (auto& [p, e] : grouped) {
    std::size_t n = divs.size();
    Int pk(1);
    for (std::size_t k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < n; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  divs.erase(std::unique(divs.begin(), divs.end()), divs.end());
  return divs;
}

Rat eval_q(const PolyQ& f, const Rat& x) {
  Rat acc(0);
  for (auto it = f.c.rbegin(); it != f.c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

bool rat_is_square(const Rat& r, Rat& root) {
  if (r < 0) return false;
  Int num = boost::multiprecision::numerator(r);
  Int den = boost::multiprecision::denominator(r);
  Int sn = boost::multiprecision::sqrt(num);
  Int sd = boost::multiprecision::sqrt(den);
  if (sn * sn != num || sd * sd != den) return false;
  root = Rat(sn, sd);
  return true;
}

}  // namespace

PolyQ parse_poly_q(const std::string& text) {
  std::vector<Rat> coeffs;
  for (const Term& t : scan_terms(text)) {
    Rat c = parse_rat(t.coeff);
    if (t.negative) c = -c;
    if (coeffs.size() <= static_cast<std::size_t>(t.exp)) coeffs.resize(t.exp + 1);
    coeffs[t.exp] += c;
  }
  return PolyQ(std::move(coeffs));
}

PolyP parse_poly_p(const std::string& text, std::uint64_t p) {
  std::vector<Fp> coeffs;
  for (const Term& t : scan_terms(text)) {
    Rat q = parse_rat(t.coeff);
    Int num = boost::multiprecision::numerator(q);
    Int den = boost::multiprecision::denominator(q);
    Fp c = Fp::from_int(num, p) / Fp::from_int(den, p);
    if (t.negative) c = -c;
    if (coeffs.size() <= static_cast<std::size_t>(t.exp)) coeffs.resize(t.exp + 1, Fp(0, p));
    coeffs[t.exp] += c;
  }
  return PolyP(std::move(coeffs));
}

namespace {
template <class K>
std::string poly_to_string_impl(const Poly<K>& p, bool (*is_one)(const K&), std::string (*coeff_str)(const K&)) {
  if (p.zero()) return "0";
  std::string out;
  for (long e = p.degree(); e >= 0; --e) {
    const K& c = p.c[e];
    if (is_zero(c)) continue;
    std::string cs = coeff_str(c);
    bool neg = !cs.empty() && cs[0] == '-';
    std::string mag = neg ? cs.substr(1) : cs;
    if (out.empty()) {
      out += neg ? "-" : "";
    } else {
      out += neg ? " - " : " + ";
    }
    if (e == 0) {
      out += mag;
    } else {
      if (!is_one(c) && mag != "1") out += mag + "*";
      out += "x";
      if (e > 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}
}  // namespace

std::string poly_to_string(const PolyQ& p) {
  return poly_to_string_impl<Rat>(
      p, [](const Rat& c) { return c == 1 || c == -1; },
      [](const Rat& c) { return c.str(); });
}

std::string poly_to_string(const PolyP& p) {
  return poly_to_string_impl<Fp>(
      p, [](const Fp& c) { return c.v == 1; },
      [](const Fp& c) { return std::to_string(c.v); });
}

bool irreducible_fp(const PolyP& f) {
  long n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  std::uint64_t p = f.lead().p;
  PolyP fm = monic(f);
  PolyP x = PolyP::x(Fp(1, p));
  // x^(p^n) == x mod f, and gcd(x^(p^(n/q)) - x, f) == 1 for prime q | n
  auto frob_iter = [&](long k) {
    PolyP g = x;
    for (long i = 0; i < k; ++i) g = poly_pow_mod(g, Int(p), fm);
    return g;
  };
  if (frob_iter(n) != divmod(x, fm).second) return false;
  for (long q = 2; q <= n; ++q) {
    if (n % q != 0) continue;
    bool q_prime = true;
    for (long d = 2; d * d <= q; ++d)
      if (q % d == 0) { q_prime = false; break; }
    if (!q_prime) continue;
    PolyP g = frob_iter(n / q) - x;
    if (poly_gcd(g, fm).degree() != 0) return false;
  }
  return true;
}

bool irreducible_q(const PolyQ& f, bool attested) {
  long n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  if (n == 2) {
    // monic expected by callers, but handle the general quadratic
    Rat a = f.c[2], b = f.c[1], c = f.c[0];
    Rat disc = b * b - Rat(4) * a * c;
    Rat root;
    return !rat_is_square(disc, root);
  }
  if (n == 3) {
    // reducible iff it has a rational root; clear denominators first
    Int lcm(1);
    for (const Rat& c : f.c) {
      Int den = boost::multiprecision::denominator(c);
      lcm = boost::multiprecision::lcm(lcm, den);
    }
    std::vector<Int> ic;
    for (const Rat& c : f.c) {
      Rat scaled = c * Rat(lcm);
      ic.push_back(boost::multiprecision::numerator(scaled));
    }
    Int g(0);
    for (const Int& v : ic) g = boost::multiprecision::gcd(g, v < 0 ? Int(-v) : v);
    if (g > 1)
      for (Int& v : ic) v /= g;
    if (ic[0] == 0) return false;  // root at 0
    std::vector<Int> pf, qf;
    if (!factor_small(ic[0], pf) || !factor_small(ic[3], qf)) {
      if (attested) return true;
      throw input_error(
          "polynomial: cubic coefficients too large to verify irreducibility; "
          "pass \"attested\": true to assert it");
    }
    for (const Int& pd : divisors_from_factors(pf))
      for (const Int& qd : divisors_from_factors(qf)) {
        Rat cand(pd, qd);
        if (eval_q(f, cand) == 0 || eval_q(f, -cand) == 0) return false;
      }
    return true;
  }
  if (attested) return true;
  throw input_error(
      "polynomial: irreducibility over Q is only decided up to degree 3; "
      "pass \"attested\": true to assert it");
}

}  // namespace finsp
