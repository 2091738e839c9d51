#include "finsp/snf.hpp"

#include <algorithm>
#include <stdexcept>

namespace finsp {

namespace {

Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

// Smallest nonzero |entry| in M at position >= (t,t); returns false if none.
bool find_pivot(const IntMat& M, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Int best;
  for (std::size_t i = t; i < M.rows(); ++i)
    for (std::size_t j = t; j < M.cols(); ++j) {
      if (is_zero(M(i, j))) continue;
      Int a = abs_int(M(i, j));
      if (!found || a < best) {
        found = true;
        best = a;
        pi = i;
        pj = j;
      }
    }
  return found;
}

}  // namespace

SmithResult smith_normal_form(const IntMat& Min) {
  IntMat M = Min;
  const std::size_t r = M.rows(), c = M.cols();
  IntMat U = IntMat::identity(r, Int(1));
  IntMat V = IntMat::identity(c, Int(1));
  std::size_t t = 0;
  const std::size_t steps = std::min(r, c);

  while (t < steps) {
    std::size_t pi, pj;
    if (!find_pivot(M, t, pi, pj)) break;
    M.swap_rows(t, pi);
    U.swap_rows(t, pi);
    M.swap_cols(t, pj);
    V.swap_cols(t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      // clear column t below the pivot
      for (std::size_t i = t + 1; i < r; ++i) {
        if (is_zero(M(i, t))) continue;
        Int q = M(i, t) / M(t, t);
        if (!is_zero(q)) {
          M.add_row(i, t, -q);
          U.add_row(i, t, -q);
        }
        if (!is_zero(M(i, t))) {  // remainder became the smaller pivot
          M.swap_rows(t, i);
          U.swap_rows(t, i);
          clean = false;
        }
      }
      // clear row t right of the pivot
      for (std::size_t j = t + 1; j < c; ++j) {
        if (is_zero(M(t, j))) continue;
        Int q = M(t, j) / M(t, t);
        if (!is_zero(q)) {
          M.add_col(j, t, -q);
          V.add_col(j, t, -q);
        }
        if (!is_zero(M(t, j))) {
          M.swap_cols(t, j);
          V.swap_cols(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // divisibility: pivot must divide the remaining submatrix
      for (std::size_t i = t + 1; i < r && clean; ++i)
        for (std::size_t j = t + 1; j < c && clean; ++j)
          if (M(i, j) % M(t, t) != 0) {
            M.add_col(t, j, Int(1));
            V.add_col(t, j, Int(1));
            clean = false;
          }
    }
    if (M(t, t) < 0) {
      M.scale_row(t, Int(-1));
      U.scale_row(t, Int(-1));
    }
    ++t;
  }

  SmithResult res;
  res.rank = t;
  res.invariants.reserve(t);
  for (std::size_t i = 0; i < t; ++i) res.invariants.push_back(M(i, i));
  res.U = std::move(U);
  res.V = std::move(V);
  res.D = std::move(M);
  return res;
}

std::size_t integer_rank(const IntMat& M) { return smith_normal_form(M).rank; }

Int determinant(const IntMat& Min) {
  if (Min.rows() != Min.cols()) throw std::logic_error("determinant: not square");
  const std::size_t n = Min.rows();
  if (n == 0) return Int(1);
  IntMat M = Min;
  Int sign(1), prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(M(k, k))) {
      std::size_t s = k + 1;
      while (s < n && is_zero(M(s, k))) ++s;
      if (s == n) return Int(0);
      M.swap_rows(k, s);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

IntMat integer_kernel(const IntMat& M) {
  SmithResult s = smith_normal_form(M);
  const std::size_t c = M.cols();
  std::vector<std::size_t> free_cols;
  for (std::size_t j = s.rank; j < c; ++j) free_cols.push_back(j);
  return submatrix_cols(s.V, free_cols);
}

std::optional<std::vector<Int>> integer_solve(const IntMat& M, const std::vector<Int>& b) {
  if (b.size() != M.rows()) throw std::logic_error("integer_solve: dimension mismatch");
  SmithResult s = smith_normal_form(M);
  std::vector<Int> ub = mul_vec(s.U, b);
  std::vector<Int> y(M.cols(), Int(0));
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < s.rank) {
      if (ub[i] % s.invariants[i] != 0) return std::nullopt;
      y[i] = ub[i] / s.invariants[i];
    } else if (!is_zero(ub[i])) {
      return std::nullopt;
    }
  }
  return mul_vec(s.V, y);
}

bool in_column_span(const IntMat& M, const std::vector<Int>& b) {
  return integer_solve(M, b).has_value();
}

AbelianInvariants module_invariants(const FpModule& m) {
  SmithResult s = smith_normal_form(m.rels);
  AbelianInvariants inv;
  inv.free_rank = m.gens - s.rank;
  for (const Int& d : s.invariants)
    if (d != 1) inv.torsion.push_back(d);
  return inv;
}

IntMat preimage_lattice(const IntMat& A, const IntMat& R) {
  if (A.rows() != R.rows()) throw std::logic_error("preimage_lattice: row mismatch");
  IntMat K = integer_kernel(hstack(A, R));
  IntMat out(A.cols(), K.cols());
  for (std::size_t i = 0; i < A.cols(); ++i)
    for (std::size_t j = 0; j < K.cols(); ++j) out(i, j) = K(i, j);
  return out;
}

bool fp_well_defined(const IntMat& A, const FpModule& M, const FpModule& N) {
  if (A.rows() != N.gens || A.cols() != M.gens) return false;
  IntMat AR = mul(A, M.rels);
  for (std::size_t j = 0; j < AR.cols(); ++j)
    if (!in_column_span(N.rels, column(AR, j))) return false;
  return true;
}

bool fp_surjective(const IntMat& A, const FpModule& /*M*/, const FpModule& N) {
  FpModule coker{N.gens, hstack(A, N.rels)};
  return module_invariants(coker).trivial();
}

bool fp_injective(const IntMat& A, const FpModule& M, const FpModule& N) {
  IntMat pre = preimage_lattice(A, N.rels);
  for (std::size_t j = 0; j < pre.cols(); ++j)
    if (!in_column_span(M.rels, column(pre, j))) return false;
  return true;
}

bool fp_iso(const IntMat& A, const FpModule& M, const FpModule& N) {
  return fp_well_defined(A, M, N) && fp_surjective(A, M, N) && fp_injective(A, M, N);
}

}  // namespace finsp
