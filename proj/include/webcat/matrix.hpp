#pragma once

// Dense matrices over any scalar with scalar_traits, with Gaussian
// elimination (rank, inverse, determinant).

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "webcat/error.hpp"
#include "webcat/scalar.hpp"

namespace webcat {

template <class S>
class Matrix {
 public:
  using T = scalar_traits<S>;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T::zero()) {}
  Matrix(std::initializer_list<std::initializer_list<S>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error("BadDims", "ragged matrix literal");
      for (const auto& x : row) a_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T::one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  S& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  template <class F>
  auto map(F f) const {
    using R = std::decay_t<decltype(f(std::declval<const S&>()))>;
    Matrix<R> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error("BadDims", "matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& x = a(i, k);
        if (T::is_zero(x, 0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("BadDims", "matrix sum dimension mismatch");
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("BadDims", "matrix difference dimension mismatch");
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
    return a;
  }
  friend Matrix operator*(const S& s, Matrix a) {
    for (auto& x : a.a_) x = s * x;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  bool is_zero(double eps = kDefaultEps) const {
    for (const auto& x : a_) if (!T::is_zero(x, eps)) return false;
    return true;
  }

  S trace() const {
    S t = T::zero();
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  /// Row-echelon reduction in place; returns pivot columns. Exact scalars
  /// pivot on the first nonzero entry, numeric ones on the largest.
  std::vector<std::size_t> eliminate(double eps = kDefaultEps, Matrix* companion = nullptr) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t best = rows_;
      double best_mag = 0.0;
      for (std::size_t i = r; i < rows_; ++i) {
        if (T::is_zero((*this)(i, c), eps)) continue;
        double mag = T::magnitude((*this)(i, c));
        if (best == rows_ || (!T::exact && mag > best_mag)) {
          best = i;
          best_mag = mag;
          if (T::exact) break;
        }
      }
      if (best == rows_) {
        for (std::size_t i = r; i < rows_; ++i) (*this)(i, c) = T::zero();
        continue;
      }
      swap_rows(r, best);
      if (companion) companion->swap_rows(r, best);
      S inv = T::inv((*this)(r, c));
      scale_row(r, inv);
      if (companion) companion->scale_row(r, inv);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || T::is_zero((*this)(i, c), 0)) continue;
        S f = (*this)(i, c);
        add_row_multiple(i, r, f);
        if (companion) companion->add_row_multiple(i, r, f);
        (*this)(i, c) = T::zero();
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank(double eps = kDefaultEps) const {
    Matrix m = *this;
    return m.eliminate(eps).size();
  }

  Matrix inverse(double eps = kDefaultEps) const {
    if (!square()) throw Error("BadDims", "inverse of a non-square matrix");
    Matrix m = *this;
    Matrix inv = identity(rows_);
    if (m.eliminate(eps, &inv).size() != rows_) throw Error("SingularMatrix", "matrix is not invertible");
    return inv;
  }

  S determinant() const {
    if (!square()) throw Error("BadDims", "determinant of a non-square matrix");
    Matrix m = *this;
    S det = T::one();
    for (std::size_t c = 0; c < cols_; ++c) {
      std::size_t p = rows_;
      double best = 0.0;
      for (std::size_t i = c; i < rows_; ++i) {
        if (T::is_zero(m(i, c), 0)) continue;
        if (p == rows_ || (!T::exact && T::magnitude(m(i, c)) > best)) {
          p = i;
          best = T::magnitude(m(i, c));
          if (T::exact) break;
        }
      }
      if (p == rows_) return T::zero();
      if (p != c) {
        m.swap_rows(p, c);
        det = -det;
      }
      det *= m(c, c);
      S inv = T::inv(m(c, c));
      for (std::size_t i = c + 1; i < rows_; ++i) {
        if (T::is_zero(m(i, c), 0)) continue;
        S f = m(i, c) * inv;
        for (std::size_t j = c; j < cols_; ++j) m(i, j) -= f * m(c, j);
      }
    }
    return det;
  }

  /// Block diagonal sum.
  friend Matrix direct_sum(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) m(a.rows_ + i, a.cols_ + j) = b(i, j);
    return m;
  }

 private:
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void scale_row(std::size_t r, const S& s) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = s * (*this)(r, j);
  }
  void add_row_multiple(std::size_t dst, std::size_t src, const S& f) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!T::is_zero((*this)(src, j), 0)) (*this)(dst, j) -= f * (*this)(src, j);
    }
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<S> a_;
};

}  // namespace webcat
