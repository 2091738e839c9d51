#pragma once

#include <cstddef>
#include <vector>

#include "finsp/matrix.hpp"
#include "finsp/snf.hpp"

namespace finsp {

// ---------------------------------------------------------------------------
// Linear algebra over an exact field (Rat or Fp)

template <class K>
std::size_t field_rank(Matrix<K> m) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t piv = rank;
    while (piv < m.rows() && is_zero(m(piv, col))) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(rank, piv);
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      if (is_zero(m(i, col))) continue;
      K f = m(i, col) / m(rank, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

// Basis of {x : Mx = 0}, as columns.
template <class K>
Matrix<K> field_kernel_basis(Matrix<K> m, const K& one) {
  const std::size_t n = m.cols();
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m.rows(); ++col) {
    std::size_t piv = rank;
    while (piv < m.rows() && is_zero(m(piv, col))) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(rank, piv);
    K p = m(rank, col);
    for (std::size_t j = col; j < n; ++j) m(rank, j) = m(rank, j) / p;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == rank || is_zero(m(i, col))) continue;
      K f = m(i, col);
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(rank, j);
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix<K> basis(n, free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    std::size_t fc = free_cols[k];
    basis(fc, k) = one;
    for (std::size_t r = 0; r < rank; ++r) basis(pivot_col[r], k) = -m(r, fc);
  }
  return basis;
}

// Cochain complex of finite-dimensional K-vector spaces:
// d[i] : K^{dims[i]} -> K^{dims[i+1]}.
template <class K>
struct FieldComplex {
  std::vector<std::size_t> dims;
  std::vector<Matrix<K>> d;  // d.size() == dims.size() - 1 (or both empty)
};

template <class K>
void validate_field_complex(const FieldComplex<K>& c) {
  if (c.dims.empty()) return;
  if (c.d.size() + 1 != c.dims.size()) throw std::logic_error("complex: differential count");
  for (std::size_t i = 0; i < c.d.size(); ++i)
    if (c.d[i].cols() != c.dims[i] || c.d[i].rows() != c.dims[i + 1])
      throw std::logic_error("complex: differential shape");
  for (std::size_t i = 0; i + 1 < c.d.size(); ++i)
    if (!is_zero_matrix(mul(c.d[i + 1], c.d[i]))) throw input_error("complex: d o d != 0");
}

template <class K>
std::vector<std::size_t> field_complex_homology(const FieldComplex<K>& c) {
  validate_field_complex(c);
  std::vector<std::size_t> h(c.dims.size());
  std::vector<std::size_t> r(c.d.size());
  for (std::size_t i = 0; i < c.d.size(); ++i) r[i] = field_rank(c.d[i]);
  for (std::size_t i = 0; i < c.dims.size(); ++i) {
    std::size_t out = i < c.d.size() ? r[i] : 0;
    std::size_t in = i > 0 ? r[i - 1] : 0;
    h[i] = c.dims[i] - out - in;
  }
  return h;
}

// Decides whether a chain map phi : A -> B induces an isomorphism H^i(A) -> H^i(B).
template <class K>
bool field_cohomology_map_iso(const FieldComplex<K>& A, const FieldComplex<K>& B,
                              const std::vector<Matrix<K>>& phi, std::size_t i, const K& one) {
  auto cycles = [&](const FieldComplex<K>& c) {
    if (i < c.d.size()) return field_kernel_basis(c.d[i], one);
    return Matrix<K>::identity(c.dims[i], one);
  };
  Matrix<K> zA = cycles(A), zB = cycles(B);
  std::size_t rA = i > 0 ? field_rank(A.d[i - 1]) : 0;
  std::size_t rB = i > 0 ? field_rank(B.d[i - 1]) : 0;
  std::size_t hA = zA.cols() - rA, hB = zB.cols() - rB;
  if (hA != hB) return false;
  if (hA == 0) return true;
  Matrix<K> img = mul(phi[i], zA);
  std::size_t induced;
  if (i > 0) {
    induced = field_rank(hstack(img, B.d[i - 1])) - rB;
  } else {
    induced = field_rank(img);
  }
  return induced == hA;
}

// ---------------------------------------------------------------------------
// Complexes of finitely presented Z-modules

struct ZComplex {
  std::vector<FpModule> terms;
  std::vector<IntMat> d;  // d[i] : terms[i] -> terms[i+1], on generators
};

// Throws input_error unless differentials are compatible with the
// presentations and consecutive differentials compose to zero.
void validate_z_complex(const ZComplex& c);

std::vector<AbelianInvariants> z_complex_homology(const ZComplex& c);

// H^i together with an explicit presentation: cycle_gens embeds Z^k into the
// generators of terms[i]; H = Z^k / rels.
struct ZCohomologyAt {
  IntMat cycle_gens;  // terms[i].gens x k
  FpModule H;
};

ZCohomologyAt z_cohomology_at(const ZComplex& c, std::size_t i);

bool z_cohomology_map_iso(const ZComplex& A, const ZComplex& B, const std::vector<IntMat>& phi,
                          std::size_t i);

// Convenience: complexes of free modules given by their differentials alone.
ZComplex free_z_complex(const std::vector<std::size_t>& dims, const std::vector<IntMat>& d);
std::vector<AbelianInvariants> complex_homology_z(const std::vector<IntMat>& d);

}  // namespace finsp
