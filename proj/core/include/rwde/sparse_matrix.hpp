#pragma once

#include "rwde/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

namespace rwde {

/// Row-compressed sparse matrix; zero entries are never stored.
template <class S>
class SparseMatrix {
 public:
  using Row = std::map<std::size_t, S>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, S(1));
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const Row& row(std::size_t r) const { return rows_.at(r); }

  S get(std::size_t r, std::size_t c) const {
    const auto& row = rows_.at(r);
    auto it = row.find(c);
    return it == row.end() ? S(0) : it->second;
  }

  void set(std::size_t r, std::size_t c, const S& v) {
    check(r, c);
    if (is_zero(v)) rows_[r].erase(c);
    else rows_[r][c] = v;
  }

  void add_to(std::size_t r, std::size_t c, const S& v) {
    check(r, c);
    auto [it, inserted] = rows_[r].try_emplace(c, v);
    if (!inserted) it->second += v;
    if (is_zero(it->second)) rows_[r].erase(it);
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

  bool is_zero_matrix() const { return nonzeros() == 0; }

  SparseMatrix& operator+=(const SparseMatrix& rhs) { return axpy(S(1), rhs); }
  SparseMatrix& operator-=(const SparseMatrix& rhs) { return axpy(S(-1), rhs); }

  /// this += a * rhs
  SparseMatrix& axpy(const S& a, const SparseMatrix& rhs) {
    same_shape(rhs);
    if (is_zero(a)) return *this;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, v] : rhs.rows_[r]) add_to(r, c, a * v);
    return *this;
  }

  friend SparseMatrix operator+(SparseMatrix a, const SparseMatrix& b) { return a += b; }
  friend SparseMatrix operator-(SparseMatrix a, const SparseMatrix& b) { return a -= b; }

  friend SparseMatrix operator*(const S& a, SparseMatrix m) {
    for (std::size_t r = 0; r < m.rows_.size(); ++r)
      for (auto it = m.rows_[r].begin(); it != m.rows_[r].end();) {
        it->second *= a;
        it = is_zero(it->second) ? m.rows_[r].erase(it) : std::next(it);
      }
    return m;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows()) throw std::invalid_argument("SparseMatrix: dimension mismatch in product");
    SparseMatrix out(a.rows(), b.cols_);
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (const auto& [k, v] : a.rows_[r])
        for (const auto& [c, w] : b.rows_[k]) out.add_to(r, c, v * w);
    return out;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

  /// Entrywise conversion through `convert`.
  template <class T, class F>
  SparseMatrix<T> map(F convert) const {
    SparseMatrix<T> out(rows(), cols_);
    for (std::size_t r = 0; r < rows(); ++r)
      for (const auto& [c, v] : rows_[r]) out.set(r, c, convert(v));
    return out;
  }

  template <class T = S>
  DenseMatrix<T> to_dense() const {
    DenseMatrix<T> d(rows(), cols_);
    for (std::size_t r = 0; r < rows(); ++r)
      for (const auto& [c, v] : rows_[r]) d(r, c) = T(v);
    return d;
  }

  /// max |entry|; 0 for the zero matrix.
  S max_abs() const {
    S best(0);
    for (const auto& row : rows_)
      for (const auto& [c, v] : row) {
        S a = magnitude(v);
        if (a > best) best = a;
      }
    return best;
  }

 private:
  static S magnitude(const S& v) {
    if constexpr (is_exact_v<S>) {
      return abs(v);
    } else {
      return std::abs(v);
    }
  }

  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_.size() || c >= cols_) throw std::out_of_range("SparseMatrix index out of range");
  }
  void same_shape(const SparseMatrix& rhs) const {
    if (rhs.rows() != rows() || rhs.cols_ != cols_) throw std::invalid_argument("SparseMatrix: shape mismatch");
  }

  std::size_t cols_ = 0;
  std::vector<Row> rows_;
};

template <class S>
SparseMatrix<S> commutator(const SparseMatrix<S>& a, const SparseMatrix<S>& b) {
  return a * b - b * a;
}

}  // namespace rwde
