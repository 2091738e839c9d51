#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "finsp/numbers.hpp"

namespace finsp {

// Dense matrix over an exact scalar (Int, Rat or Fp). Row-major storage.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), e_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : r_(rows), c_(cols), e_(std::move(entries)) {
    if (e_.size() != r_ * c_) throw std::logic_error("Matrix: entry count mismatch");
  }

  static Matrix identity(std::size_t n, const T& one) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& operator()(std::size_t i, std::size_t j) { return e_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return e_[i * c_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < c_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < r_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row a += k * row b
  void add_row(std::size_t a, std::size_t b, const T& k) {
    for (std::size_t j = 0; j < c_; ++j) (*this)(a, j) += k * (*this)(b, j);
  }
  void add_col(std::size_t a, std::size_t b, const T& k) {
    for (std::size_t i = 0; i < r_; ++i) (*this)(i, a) += k * (*this)(i, b);
  }
  void scale_row(std::size_t a, const T& k) {
    for (std::size_t j = 0; j < c_; ++j) (*this)(a, j) = k * (*this)(a, j);
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.e_ == b.e_;
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> e_;
};

using IntMat = Matrix<Int>;

template <class T>
Matrix<T> mul(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw std::logic_error("mul: dimension mismatch");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

// [A | B], same row count
template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw std::logic_error("hstack: row mismatch");
  Matrix<T> out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

template <class T>
bool is_zero_matrix(const Matrix<T>& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!is_zero(a(i, j))) return false;
  return true;
}

template <class T>
std::vector<T> mul_vec(const Matrix<T>& a, const std::vector<T>& x) {
  if (a.cols() != x.size()) throw std::logic_error("mul_vec: dimension mismatch");
  std::vector<T> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!is_zero(a(i, j))) out[i] += a(i, j) * x[j];
  return out;
}

template <class T>
Matrix<T> submatrix_cols(const Matrix<T>& a, const std::vector<std::size_t>& cols) {
  Matrix<T> out(a.rows(), cols.size());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = a(i, cols[j]);
  return out;
}

template <class T>
std::vector<T> column(const Matrix<T>& a, std::size_t j) {
  std::vector<T> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = a(i, j);
  return out;
}

}  // namespace finsp
