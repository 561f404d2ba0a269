#pragma once

// Small dense linear algebra over double, std::complex<double> and Rational.
// Sizes here are desk scale (|U| <= 15, tree bases of a few hundred), so a
// row-major vector and textbook Gaussian elimination are all that is needed.

#include "rwde/rational.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace rwde {

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

template <class S>
bool is_zero(const S& x) {
  if constexpr (is_exact_v<S>) {
    return sgn(x) == 0;
  } else {
    return x == S(0);
  }
}

template <class S>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  DenseMatrix operator*(const DenseMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("DenseMatrix: dimension mismatch in product");
    DenseMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const S& a = (*this)(i, k);
        if (is_zero(a)) continue;
        for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
      }
    return out;
  }

  std::vector<S> operator*(const std::vector<S>& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("DenseMatrix: dimension mismatch in matvec");
    std::vector<S> out(rows_, S(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) out[i] += (*this)(i, k) * v[k];
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

/// In-place LU factorization with partial pivoting (largest magnitude for
/// floating point, first nonzero for exact scalars).
template <class S>
class LuDecomposition {
 public:
  explicit LuDecomposition(DenseMatrix<S> a) : lu_(std::move(a)), perm_(lu_.rows()) {
    if (lu_.rows() != lu_.cols()) throw std::invalid_argument("LU of a non-square matrix");
    const std::size_t n = lu_.rows();
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = n;
      if constexpr (is_exact_v<S>) {
        for (std::size_t i = k; i < n && p == n; ++i)
          if (!is_zero(lu_(i, k))) p = i;
      } else {
        double best = 0.0;
        for (std::size_t i = k; i < n; ++i) {
          double m = std::abs(lu_(i, k));
          if (m > best) {
            best = m;
            p = i;
          }
        }
      }
      if (p == n) {
        singular_ = true;
        continue;
      }
      if (p != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
        std::swap(perm_[k], perm_[p]);
        parity_ = !parity_;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        if (is_zero(lu_(i, k))) continue;
        lu_(i, k) /= lu_(k, k);
        const S factor = lu_(i, k);
        for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= factor * lu_(k, j);
      }
    }
  }

  bool singular() const { return singular_; }

  S determinant() const {
    if (singular_) return S(0);
    S det = parity_ ? S(-1) : S(1);
    for (std::size_t i = 0; i < lu_.rows(); ++i) det *= lu_(i, i);
    return det;
  }

  std::vector<S> solve(const std::vector<S>& b) const {
    if (singular_) throw std::domain_error("LU solve with a singular matrix");
    const std::size_t n = lu_.rows();
    std::vector<S> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      S acc = b[perm_[i]];
      for (std::size_t j = 0; j < i; ++j) acc -= lu_(i, j) * x[j];
      x[i] = acc;
    }
    for (std::size_t i = n; i-- > 0;) {
      S acc = x[i];
      for (std::size_t j = i + 1; j < n; ++j) acc -= lu_(i, j) * x[j];
      x[i] = acc / lu_(i, i);
    }
    return x;
  }

  DenseMatrix<S> inverse() const {
    const std::size_t n = lu_.rows();
    DenseMatrix<S> inv(n, n);
    std::vector<S> e(n, S(0));
    for (std::size_t c = 0; c < n; ++c) {
      e[c] = S(1);
      std::vector<S> col = solve(e);
      for (std::size_t r = 0; r < n; ++r) inv(r, c) = col[r];
      e[c] = S(0);
    }
    return inv;
  }

 private:
  DenseMatrix<S> lu_;
  std::vector<std::size_t> perm_;
  bool parity_ = false;
  bool singular_ = false;
};

/// Exact rank by fraction-free row reduction over the rationals.
inline std::size_t rank(DenseMatrix<Rational> m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (is_zero(m(i, c))) continue;
      Rational f = m(i, c) / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace rwde
