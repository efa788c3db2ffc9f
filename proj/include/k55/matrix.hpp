#pragma once

#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "k55/fp.hpp"
#include "k55/rational.hpp"

namespace k55::linalg {

// Dense row-major matrix over an exact scalar (Fp or Rational). The largest
// matrices in this project are 25 x 36, so dense storage is the whole story.
template <typename T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}

  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(std::vector<std::vector<T>> rows) {
    Matrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.empty() ? 0 : rows.front().size();
    m.data_.reserve(m.rows_ * m.cols_);
    for (auto& r : rows) {
      if (r.size() != m.cols_) throw std::invalid_argument("Matrix: ragged rows");
      for (auto& x : r) m.data_.push_back(std::move(x));
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }

  Matrix transposed() const {
    if (rows_ == 0 || cols_ == 0) {
      Matrix t;
      t.rows_ = cols_;
      t.cols_ = rows_;
      return t;
    }
    Matrix t(cols_, rows_, data_.front());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<T> data_;
};

struct EchelonResult {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

// In-place reduction to reduced row echelon form. Pivot choice is
// first-nonzero-in-column, so the result is deterministic for a given
// matrix; over exact fields there is nothing to gain from pivoting by size.
template <typename T>
EchelonResult rref(Matrix<T>& m) {
  EchelonResult res;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t pr = 0;  // next pivot row
  for (std::size_t c = 0; c < cols && pr < rows; ++c) {
    std::size_t pivot = pr;
    while (pivot < rows && is_zero(m(pivot, c))) ++pivot;
    if (pivot == rows) continue;
    if (pivot != pr) m.swap_rows(pivot, pr);
    const T inv = one_like(m(pr, c)) / m(pr, c);
    for (std::size_t j = c; j < cols; ++j) m(pr, j) = m(pr, j) * inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pr || is_zero(m(r, c))) continue;
      const T f = m(r, c);
      for (std::size_t j = c; j < cols; ++j) m(r, j) = m(r, j) - f * m(pr, j);
    }
    res.pivot_cols.push_back(c);
    ++pr;
  }
  res.rank = pr;
  return res;
}

template <typename T>
std::size_t rank(Matrix<T> m) {
  return rref(m).rank;
}

// Basis of {x : m x = 0}, one vector per free column, in reduced echelon
// convention: entry 1 at the free column, minus the RREF coefficient at each
// pivot column. Deterministic for a given matrix.
template <typename T>
std::vector<std::vector<T>> right_nullspace(Matrix<T> m) {
  const std::size_t cols = m.cols();
  // anchor supplies zero/one with the right modulus for Fp; a default T
  // only appears for constraint-free corner cases.
  const T anchor = (m.rows() > 0 && cols > 0) ? m(0, 0) : T{};
  const EchelonResult e = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<T>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(cols, zero_like(anchor));
    v[f] = one_like(anchor);
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
      v[e.pivot_cols[i]] = zero_like(anchor) - m(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// {w : w m = 0} as the kernel of the transpose.
template <typename T>
std::vector<std::vector<T>> left_nullspace(const Matrix<T>& m) {
  return right_nullspace(m.transposed());
}

// Fraction-free Bareiss elimination; exact integer arithmetic throughout.
inline mpz_class determinant_bareiss(Matrix<mpz_class> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  mpz_class prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      m.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace detail {

// Plain elimination determinant for a field.
template <typename T>
T determinant_field(Matrix<T> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) throw std::invalid_argument("determinant: empty matrix");
  T det = one_like(m(0, 0));
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && is_zero(m(pivot, k))) ++pivot;
    if (pivot == n) return zero_like(m(0, 0));
    if (pivot != k) {
      m.swap_rows(pivot, k);
      negate = !negate;
    }
    det = det * m(k, k);
    const T inv = one_like(m(k, k)) / m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(m(i, k))) continue;
      const T f = m(i, k) * inv;
      for (std::size_t j = k; j < n; ++j) m(i, j) = m(i, j) - f * m(k, j);
    }
  }
  return negate ? zero_like(det) - det : det;
}

}  // namespace detail

// Exact determinant. Integer and rational matrices go through fraction-free
// Bareiss (rationals by clearing denominators row by row); the prime field
// uses plain elimination.
template <typename T>
T determinant(const Matrix<T>& m) {
  if constexpr (std::is_same_v<T, mpz_class>) {
    return determinant_bareiss(m);
  } else if constexpr (std::is_same_v<T, Rational>) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return Rational(1);
    Matrix<mpz_class> z(n, n, mpz_class(0));
    mpz_class scale(1);
    for (std::size_t r = 0; r < n; ++r) {
      mpz_class lcm(1);
      for (std::size_t c = 0; c < n; ++c)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(r, c).get_den().get_mpz_t());
      for (std::size_t c = 0; c < n; ++c) {
        mpz_class t = m(r, c).get_num() * (lcm / m(r, c).get_den());
        z(r, c) = t;
      }
      scale *= lcm;
    }
    Rational det(determinant_bareiss(std::move(z)), scale);
    det.canonicalize();
    return det;
  } else {
    return detail::determinant_field(m);
  }
}

}  // namespace k55::linalg
