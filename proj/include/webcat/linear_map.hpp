#pragma once

// Sparse linear maps between tensor-power spaces, stored by columns.

#include <algorithm>
#include <cstddef>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "webcat/matrix.hpp"
#include "webcat/scalar.hpp"

namespace webcat {

template <class S>
using SparseVec = std::map<std::size_t, S>;

template <class S>
void axpy(SparseVec<S>& y, const S& a, const SparseVec<S>& x) {
  using T = scalar_traits<S>;
  for (const auto& [i, xi] : x) {
    auto [it, fresh] = y.emplace(i, a * xi);
    if (!fresh) {
      it->second += a * xi;
      if (T::is_zero(it->second, 0)) y.erase(it);
    }
  }
}

template <class S>
class LinearMap {
 public:
  using T = scalar_traits<S>;

  LinearMap() = default;
  LinearMap(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), col_(cols) {}

  static LinearMap identity(std::size_t n) {
    LinearMap m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.col_[i].emplace(i, T::one());
    return m;
  }
  static LinearMap scalar(const S& s) {
    LinearMap m(1, 1);
    m.set(0, 0, s);
    return m;
  }
  static LinearMap from_matrix(const Matrix<S>& a) {
    LinearMap m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) m.set(i, j, a(i, j));
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const SparseVec<S>& column(std::size_t j) const { return col_[j]; }

  void set(std::size_t i, std::size_t j, const S& x) {
    if (i >= rows_ || j >= cols_) throw Error("BadDims", "entry index out of range");
    if (T::is_zero(x, 0)) col_[j].erase(i);
    else col_[j][i] = x;
  }
  S at(std::size_t i, std::size_t j) const {
    auto it = col_[j].find(i);
    return it == col_[j].end() ? T::zero() : it->second;
  }
  std::size_t nonzeros() const {
    std::size_t k = 0;
    for (const auto& c : col_) k += c.size();
    return k;
  }

  Matrix<S> to_matrix() const {
    Matrix<S> a(rows_, cols_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [i, x] : col_[j]) a(i, j) = x;
    return a;
  }

  /// Row-major list of nonzero entries.
  std::vector<std::tuple<std::size_t, std::size_t, S>> entries() const {
    std::vector<std::tuple<std::size_t, std::size_t, S>> out;
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [i, x] : col_[j]) out.emplace_back(i, j, x);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    return out;
  }

  SparseVec<S> apply(const SparseVec<S>& x) const {
    SparseVec<S> y;
    for (const auto& [j, xj] : x) axpy(y, xj, col_[j]);
    return y;
  }

  /// this ∘ b
  friend LinearMap operator*(const LinearMap& a, const LinearMap& b) {
    if (a.cols_ != b.rows_) throw Error("BadDims", "composition dimension mismatch");
    LinearMap c(a.rows_, b.cols_);
    for (std::size_t j = 0; j < b.cols_; ++j) c.col_[j] = a.apply(b.col_[j]);
    return c;
  }
  friend LinearMap operator+(LinearMap a, const LinearMap& b) {
    a.check_same(b);
    for (std::size_t j = 0; j < a.cols_; ++j) axpy(a.col_[j], T::one(), b.col_[j]);
    return a;
  }
  friend LinearMap operator-(LinearMap a, const LinearMap& b) {
    a.check_same(b);
    S minus_one = -T::one();
    for (std::size_t j = 0; j < a.cols_; ++j) axpy(a.col_[j], minus_one, b.col_[j]);
    return a;
  }
  friend LinearMap operator*(const S& s, const LinearMap& a) {
    LinearMap m(a.rows_, a.cols_);
    if (T::is_zero(s, 0)) return m;
    for (std::size_t j = 0; j < a.cols_; ++j)
      for (const auto& [i, x] : a.col_[j]) m.col_[j].emplace_hint(m.col_[j].end(), i, s * x);
    return m;
  }

  /// Kronecker product: index (i1, i2) -> i1 * b.rows + i2.
  friend LinearMap kron(const LinearMap& a, const LinearMap& b) {
    LinearMap m(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t j1 = 0; j1 < a.cols_; ++j1)
      for (std::size_t j2 = 0; j2 < b.cols_; ++j2) {
        auto& out = m.col_[j1 * b.cols_ + j2];
        for (const auto& [i1, x1] : a.col_[j1])
          for (const auto& [i2, x2] : b.col_[j2]) out.emplace(i1 * b.rows_ + i2, x1 * x2);
      }
    return m;
  }

  LinearMap transpose() const {
    LinearMap t(cols_, rows_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [i, x] : col_[j]) t.col_[i].emplace(j, x);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& c : col_)
      for (const auto& [i, x] : c) m = std::max(m, residual_size(x));
    return m;
  }
  bool is_zero(double eps = kDefaultEps) const {
    for (const auto& c : col_)
      for (const auto& [i, x] : c)
        if (!T::is_zero(x, eps)) return false;
    return true;
  }
  friend bool approx_equal(const LinearMap& a, const LinearMap& b, double eps = kDefaultEps) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    return (a - b).is_zero(eps);
  }
  friend bool operator==(const LinearMap& a, const LinearMap& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.col_ == b.col_;
  }

  template <class F>
  auto map_entries(F f) const {
    using R = std::decay_t<decltype(f(std::declval<const S&>()))>;
    LinearMap<R> m(rows_, cols_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [i, x] : col_[j]) m.set(i, j, f(x));
    return m;
  }

 private:
  void check_same(const LinearMap& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw Error("BadDims", "linear map shape mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<SparseVec<S>> col_;
};

/// (id_left ⊗ g ⊗ id_right) applied to x, where the vector index is
/// (l * g.cols + m) * right + r.
template <class S>
SparseVec<S> apply_local(const LinearMap<S>& g, std::size_t right, const SparseVec<S>& x) {
  SparseVec<S> y;
  const std::size_t mid_in = g.cols(), mid_out = g.rows();
  for (const auto& [idx, xv] : x) {
    const std::size_t r = idx % right;
    const std::size_t rest = idx / right;
    const std::size_t m = rest % mid_in;
    const std::size_t l = rest / mid_in;
    for (const auto& [mo, gv] : g.column(m)) {
      const std::size_t out = (l * mid_out + mo) * right + r;
      auto [it, fresh] = y.emplace(out, gv * xv);
      if (!fresh) {
        it->second += gv * xv;
        if (scalar_traits<S>::is_zero(it->second, 0)) y.erase(it);
      }
    }
  }
  return y;
}

}  // namespace webcat
