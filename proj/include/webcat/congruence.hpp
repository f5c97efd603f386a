#pragma once

// Congruence canonical forms of nonsingular bilinear forms. The block
// multiset of M is read off from the Jordan structure of its cosquare
// M^-T M: J_j((-1)^{j+1}) gives Γ_j, and a pair J_k(λ), J_k(1/λ) gives
// H_2k(λ).

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "webcat/matrix.hpp"
#include "webcat/qscalar.hpp"
#include "webcat/scalar.hpp"

namespace webcat {

// ------------------------------------------------------------ blocks

enum class BlockKind { Gamma, H, JordanZero };

/// Eigenvalue label of an H block. Exact labels are elements of Q(v), or a
/// pair {λ, 1/λ} of conjugate roots of x^2 - t x + 1 irreducible over the
/// ground field, stored through t. Numeric labels are complex.
struct BlockLambda {
  enum class Kind { None, Exact, QuadraticPair, Numeric };
  Kind kind = Kind::None;
  FieldElement value;  // Exact: λ; QuadraticPair: t = λ + 1/λ
  Complex z;           // Numeric

  static BlockLambda exact(FieldElement x) { return {Kind::Exact, std::move(x), {}}; }
  static BlockLambda pair(FieldElement t) { return {Kind::QuadraticPair, std::move(t), {}}; }
  static BlockLambda numeric(Complex z) { return {Kind::Numeric, {}, z}; }
};

struct Block {
  BlockKind kind = BlockKind::Gamma;
  int size = 1;  // Γ_j: j; H_2k: k; J_i(0): i
  BlockLambda lambda;

  std::size_t dimension() const { return kind == BlockKind::H ? 2 * size : size; }
};

inline Block gamma_block(int j) { return {BlockKind::Gamma, j, {}}; }
inline Block h_block(int k, BlockLambda l) { return {BlockKind::H, k, std::move(l)}; }

struct CanonicalForm {
  std::vector<Block> blocks;

  std::size_t dimension() const {
    std::size_t d = 0;
    for (const auto& b : blocks) d += b.dimension();
    return d;
  }
};

inline std::string lambda_string(const BlockLambda& l) {
  switch (l.kind) {
    case BlockLambda::Kind::Exact: return to_string(l.value);
    case BlockLambda::Kind::QuadraticPair: return "root of x^2 - (" + to_string(l.value) + ")x + 1";
    case BlockLambda::Kind::Numeric: return format_complex(l.z);
    case BlockLambda::Kind::None: break;
  }
  return "";
}

inline std::string to_string(const CanonicalForm& f) {
  std::string s;
  for (const auto& b : f.blocks) {
    if (!s.empty()) s += " + ";
    switch (b.kind) {
      case BlockKind::Gamma: s += "Gamma_" + std::to_string(b.size); break;
      case BlockKind::H: s += "H_" + std::to_string(2 * b.size) + "(" + lambda_string(b.lambda) + ")"; break;
      case BlockKind::JordanZero: s += "J_" + std::to_string(b.size) + "(0)"; break;
    }
  }
  return s.empty() ? "0" : s;
}

namespace detail {

inline bool block_less(const Block& a, const Block& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.size != b.size) return a.size < b.size;
  if (a.lambda.kind != b.lambda.kind) return a.lambda.kind < b.lambda.kind;
  if (a.lambda.kind == BlockLambda::Kind::Numeric) {
    if (a.lambda.z.real() != b.lambda.z.real()) return a.lambda.z.real() < b.lambda.z.real();
    return a.lambda.z.imag() < b.lambda.z.imag();
  }
  return lambda_string(a.lambda) < lambda_string(b.lambda);
}

inline bool lambda_close(const BlockLambda& a, const BlockLambda& b, double tol) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case BlockLambda::Kind::None: return true;
    case BlockLambda::Kind::Exact: return a.value == b.value || a.value == b.value.inverse();
    case BlockLambda::Kind::QuadraticPair: return a.value == b.value;
    case BlockLambda::Kind::Numeric: {
      const double scale = std::max(1.0, std::abs(a.z));
      return std::abs(a.z - b.z) <= tol * scale || std::abs(a.z * b.z - 1.0) <= tol * scale;
    }
  }
  return false;
}

}  // namespace detail

inline void sort_blocks(CanonicalForm& f) { std::sort(f.blocks.begin(), f.blocks.end(), detail::block_less); }

/// Multiset equality, with λ compared up to λ <-> 1/λ (and within tol for
/// numeric labels).
inline bool same_form(const CanonicalForm& a, const CanonicalForm& b, double tol = 1e3 * kDefaultEps) {
  if (a.blocks.size() != b.blocks.size()) return false;
  std::vector<bool> used(b.blocks.size(), false);
  for (const auto& x : a.blocks) {
    bool found = false;
    for (std::size_t i = 0; i < b.blocks.size() && !found; ++i) {
      const Block& y = b.blocks[i];
      if (used[i] || x.kind != y.kind || x.size != y.size) continue;
      if (x.kind == BlockKind::H && !detail::lambda_close(x.lambda, y.lambda, tol)) continue;
      used[i] = found = true;
    }
    if (!found) return false;
  }
  return true;
}

/// Γ_j has, in the row r counted from the bottom (r = 0..j-1), the entries
/// (-1)^r in columns r and r+1. Γ_1 = (1), Γ_2 = [[0,-1],[1,1]].
template <class S>
Matrix<S> gamma_matrix(int j) {
  using T = scalar_traits<S>;
  if (j < 1) throw Error("BadDims", "Gamma block size must be positive");
  const std::size_t n = static_cast<std::size_t>(j);
  Matrix<S> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = n - 1 - i;
    const S sign = T::from_int(r % 2 == 0 ? 1 : -1);
    m(i, r) = sign;
    if (r + 1 < n) m(i, r + 1) = sign;
  }
  return m;
}

/// Upper-triangular Jordan block J_k(λ).
template <class S>
Matrix<S> jordan_matrix(int k, const S& lambda) {
  const std::size_t n = static_cast<std::size_t>(k);
  Matrix<S> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = lambda;
    if (i + 1 < n) m(i, i + 1) = scalar_traits<S>::one();
  }
  return m;
}

/// H_2k(λ) = [[0, I_k], [J_k(λ), 0]].
template <class S>
Matrix<S> h_matrix(int k, const S& lambda) {
  if (k < 1) throw Error("BadDims", "H block half-size must be positive");
  const std::size_t n = static_cast<std::size_t>(k);
  Matrix<S> m(2 * n, 2 * n);
  const Matrix<S> J = jordan_matrix(k, lambda);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, n + i) = scalar_traits<S>::one();
    for (std::size_t j = 0; j < n; ++j) m(n + i, j) = J(i, j);
  }
  return m;
}

/// Literal block matrix.
template <class S>
Matrix<S> build_block(BlockKind kind, int size, const S& lambda = scalar_traits<S>::zero()) {
  switch (kind) {
    case BlockKind::Gamma: return gamma_matrix<S>(size);
    case BlockKind::H:
      if (scalar_traits<S>::is_zero(lambda, 0)) throw Error("BadDims", "H block needs a nonzero eigenvalue");
      return h_matrix<S>(size, lambda);
    case BlockKind::JordanZero: return jordan_matrix<S>(size, scalar_traits<S>::zero());
  }
  return {};
}

template <class S>
Matrix<S> block_sum(const std::vector<Matrix<S>>& parts) {
  Matrix<S> m;
  for (const auto& p : parts) m = direct_sum(m, p);
  return m;
}

/// tr(M^T M^-1).
template <class S>
S quantum_trace(const Matrix<S>& M, double eps = kDefaultEps) {
  const Matrix<S> N = M.inverse(eps);
  S t = scalar_traits<S>::zero();
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) t += M(i, j) * N(i, j);
  return t;
}

/// M^-T M.
template <class S>
Matrix<S> cosquare(const Matrix<S>& M, double eps = kDefaultEps) {
  return M.inverse(eps).transpose() * M;
}

// ------------------------------------------------------------ exact mode

namespace detail {

/// Coefficients (low to high) of det(x I - A), by Faddeev-LeVerrier.
template <class S>
std::vector<S> charpoly(const Matrix<S>& A) {
  using T = scalar_traits<S>;
  const std::size_t n = A.rows();
  std::vector<S> c(n + 1, T::zero());
  c[n] = T::one();
  Matrix<S> Mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    Mk = A * Mk;
    for (std::size_t i = 0; i < n; ++i) Mk(i, i) += c[n - k + 1];
    c[n - k] = -(A * Mk).trace() * T::inv(T::from_int(static_cast<long>(k)));
  }
  return c;
}

template <class S>
S poly_eval(const std::vector<S>& p, const S& x) {
  S acc = scalar_traits<S>::zero();
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

/// p / (x - r), assuming r is a root.
template <class S>
std::vector<S> deflate(const std::vector<S>& p, const S& r) {
  std::vector<S> out(p.size() - 1, scalar_traits<S>::zero());
  S carry = scalar_traits<S>::zero();
  for (std::size_t i = p.size(); i-- > 1;) {
    carry = carry * r + p[i];
    out[i - 1] = carry;
  }
  return out;
}

template <class S>
std::vector<S> poly_mul(const std::vector<S>& a, const std::vector<S>& b) {
  std::vector<S> c(a.size() + b.size() - 1, scalar_traits<S>::zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

inline std::vector<mpz_class> divisors(mpz_class a) {
  a = abs(a);
  if (a > mpz_class("1000000000000")) throw Error("Unsupported", "characteristic polynomial coefficients too large for exact root search");
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      out.push_back(d);
      if (d * d != a) out.push_back(a / d);
    }
  }
  return out;
}

/// Candidate roots of a polynomial over the ground field.
inline std::vector<Rational> root_candidates(const std::vector<Rational>& p) {
  mpz_class l = 1;
  for (const auto& c : p) l = lcm(l, c.get_den());
  std::vector<mpz_class> z;
  for (const auto& c : p) z.push_back(mpz_class(c * l));
  std::size_t lo = 0;
  while (lo < z.size() && z[lo] == 0) ++lo;
  std::vector<Rational> out;
  if (lo > 0) out.push_back(0);
  for (const auto& a : divisors(z[lo]))
    for (const auto& b : divisors(z.back())) {
      Rational r(a, b);
      r.canonicalize();
      out.push_back(r);
      out.push_back(-r);
    }
  return out;
}

/// Over Q(v) only the units ±v^k are tried; this covers the cosquares that
/// arise from the standard solutions (eigenvalues ±q^k).
inline std::vector<FieldElement> root_candidates(const std::vector<FieldElement>& p) {
  int span = 2;
  for (const auto& c : p) {
    if (c.is_zero()) continue;
    span = std::max({span, std::abs(c.num().low()), std::abs(c.num().high()), std::abs(c.den().low()),
                     std::abs(c.den().high())});
  }
  std::vector<FieldElement> out;
  for (int k = -2 * span; k <= 2 * span; ++k) {
    out.push_back(FieldElement::v_pow(k));
    out.push_back(-FieldElement::v_pow(k));
  }
  return out;
}

inline FieldElement to_field(const Rational& x) { return FieldElement(x); }
inline FieldElement to_field(const FieldElement& x) { return x; }

/// Jordan block sizes from the nullities of B, B^2, ..., B^m, scaled by
/// `mult` (2 for a quadratic-pair factor, where each size occurs once per root).
template <class S>
std::vector<int> block_sizes_exact(const Matrix<S>& B, std::size_t algebraic, std::size_t mult) {
  const std::size_t n = B.rows();
  std::vector<std::size_t> nullity{0};
  Matrix<S> P = Matrix<S>::identity(n);
  while (nullity.back() < algebraic) {
    P = P * B;
    nullity.push_back(n - P.rank(0));
    if (nullity.back() == nullity[nullity.size() - 2]) throw Error("Unsupported", "inconsistent exact Jordan structure");
  }
  std::vector<int> sizes;
  const std::size_t K = nullity.size() - 1;
  for (std::size_t k = 1; k <= K; ++k) {
    const std::size_t ge_k = (nullity[k] - nullity[k - 1]) / mult;
    const std::size_t ge_k1 = k + 1 <= K ? (nullity[k + 1] - nullity[k]) / mult : 0;
    for (std::size_t c = 0; c < ge_k - ge_k1; ++c) sizes.push_back(static_cast<int>(k));
  }
  return sizes;
}

inline bool prefer_representative(const FieldElement& a, const FieldElement& b) {
  // |λ| >= 1 measured at v = 2; ties broken by the printed form.
  try {
    const double ma = std::abs(a.evaluate(Rational(2)).get_d()), mb = std::abs(b.evaluate(Rational(2)).get_d());
    if (std::abs(ma - mb) > 1e-12) return ma > mb;
  } catch (const Error&) {
  }
  return to_string(a) <= to_string(b);
}

/// Adds blocks for one eigenvalue class with the given Jordan sizes.
/// sign_one: 0 unless λ = ±1, where it is that sign.
inline void emit_blocks(CanonicalForm& f, const std::vector<int>& sizes, int sign_one, const BlockLambda& label,
                        const std::vector<int>* partner_sizes) {
  if (sign_one != 0) {
    std::map<int, int> paired;
    for (int j : sizes) {
      const int gamma_sign = (j % 2 == 1) ? 1 : -1;  // (-1)^{j+1}
      if (gamma_sign == sign_one) f.blocks.push_back(gamma_block(j));
      else ++paired[j];
    }
    for (const auto& [k, c] : paired) {
      if (c % 2 != 0) throw Error("UnpairedEigenvalues", "Jordan blocks J_" + std::to_string(k) + "(" +
                                                           std::to_string(sign_one) + ") do not pair up");
      for (int i = 0; i < c / 2; ++i) f.blocks.push_back(h_block(k, label));
    }
    return;
  }
  if (partner_sizes) {
    std::vector<int> a = sizes, b = *partner_sizes;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw Error("UnpairedEigenvalues", "Jordan structures of λ and 1/λ differ");
  }
  for (int k : sizes) f.blocks.push_back(h_block(k, label));
}

}  // namespace detail

/// Exact canonical form over the ground field of S (Rational or
/// FieldElement). Supported when the cosquare's characteristic polynomial
/// splits into ground-field roots times a power of one irreducible
/// self-reciprocal quadratic x^2 - t x + 1.
template <class S>
CanonicalForm canonical_form_exact(const Matrix<S>& M) {
  using T = scalar_traits<S>;
  if (!M.square()) throw Error("BadDims", "canonical form needs a square matrix");
  const std::size_t n = M.rows();
  CanonicalForm f;
  if (n == 0) return f;
  const Matrix<S> C = cosquare(M, 0);
  std::vector<S> p = detail::charpoly(C);
  // roots with algebraic multiplicities
  std::vector<std::pair<S, std::size_t>> roots;
  for (const S& r : detail::root_candidates(p)) {
    if (p.size() <= 1) break;
    std::size_t m = 0;
    while (p.size() > 1 && T::is_zero(detail::poly_eval(p, r), 0)) {
      p = detail::deflate(p, r);
      ++m;
    }
    if (m > 0) roots.emplace_back(r, m);
  }
  std::optional<S> pair_trace;
  std::size_t pair_power = 0;
  if (p.size() > 1) {
    const std::size_t deg = p.size() - 1;
    if (deg % 2 != 0) throw Error("Unsupported", "cosquare eigenvalues are not resolvable over the ground field");
    pair_power = deg / 2;
    const S t = -p[deg - 1] * T::inv(T::from_int(static_cast<long>(pair_power)));
    std::vector<S> quad{T::one(), -t, T::one()}, acc{T::one()};
    for (std::size_t i = 0; i < pair_power; ++i) acc = detail::poly_mul(acc, quad);
    if (!(acc == p)) throw Error("Unsupported", "cosquare eigenvalues are not resolvable over the ground field");
    pair_trace = t;
  }
  const Matrix<S> I = Matrix<S>::identity(n);
  std::vector<bool> done(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (done[i]) continue;
    done[i] = true;
    const S& lam = roots[i].first;
    if (T::is_zero(lam, 0)) throw Error("SingularMatrix", "cosquare has eigenvalue 0");
    const auto sizes = detail::block_sizes_exact(Matrix<S>(C - lam * I), roots[i].second, 1);
    const int sign_one = lam == T::one() ? 1 : (lam == -T::one() ? -1 : 0);
    if (sign_one != 0) {
      detail::emit_blocks(f, sizes, sign_one, BlockLambda::exact(detail::to_field(lam)), nullptr);
      continue;
    }
    const S inv = T::inv(lam);
    std::size_t j = 0;
    while (j < roots.size() && !(roots[j].first == inv)) ++j;
    if (j == roots.size()) throw Error("UnpairedEigenvalues", "eigenvalue without its inverse in the cosquare");
    done[j] = true;
    const auto partner = detail::block_sizes_exact(Matrix<S>(C - inv * I), roots[j].second, 1);
    FieldElement a = detail::to_field(lam), b = detail::to_field(inv);
    const FieldElement rep = detail::prefer_representative(a, b) ? a : b;
    detail::emit_blocks(f, sizes, 0, BlockLambda::exact(rep), &partner);
  }
  if (pair_trace) {
    const S t = *pair_trace;
    const Matrix<S> Q = C * C - t * C + I;
    const auto sizes = detail::block_sizes_exact(Q, 2 * pair_power, 2);
    detail::emit_blocks(f, sizes, 0, BlockLambda::pair(detail::to_field(t)), nullptr);
  }
  sort_blocks(f);
  return f;
}

// ------------------------------------------------------------ numeric mode

namespace detail {

using CMat = Eigen::MatrixXcd;

inline CMat to_eigen(const Matrix<Complex>& a) {
  CMat m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  return m;
}

/// Orthonormal basis of ker B^k from one of ker B^{k-1}:
/// ker B^k = ker (I - V V^*) B. Avoids forming matrix powers.
inline CMat next_kernel(const CMat& B, const CMat& V, double tol) {
  const Eigen::Index n = B.rows();
  CMat proj = CMat::Identity(n, n) - V * V.adjoint();
  Eigen::JacobiSVD<CMat> svd(proj * B, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

struct Cluster {
  Complex center;
  std::size_t size = 0;
  std::vector<int> blocks;
};

/// Single-linkage clusters of the eigenvalues at gap threshold tau, each
/// with its Jordan sizes from Weyr characteristics. Empty on inconsistency.
inline std::vector<Cluster> cluster_eigenvalues(const CMat& C, const std::vector<Complex>& ev, double tau,
                                                double rank_tol) {
  const std::size_t n = ev.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(ev[i] - ev[j]) <= tau * std::max(1.0, std::abs(ev[i]))) parent[find(i)] = find(j);
  std::map<std::size_t, std::vector<Complex>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(ev[i]);
  std::vector<Cluster> out;
  const CMat I = CMat::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& [root, g] : groups) {
    Cluster c;
    c.size = g.size();
    for (const auto& z : g) c.center += z;
    c.center /= static_cast<double>(g.size());
    const CMat B = C - c.center * I;
    Eigen::JacobiSVD<CMat> norm_svd(B);
    const double tol = rank_tol * std::max(1.0, norm_svd.singularValues()(0));
    CMat V(static_cast<Eigen::Index>(n), 0);
    std::vector<std::size_t> nullity{0};
    // nullities must climb to the cluster size and stay there one step
    // beyond; a cluster holding only part of a split Jordan block fails this
    std::size_t K = 0;
    for (std::size_t k = 1; k <= c.size + 1; ++k) {
      V = next_kernel(B, V, tol);
      nullity.push_back(static_cast<std::size_t>(V.cols()));
      if (nullity.back() < nullity[k - 1]) return {};
      if (K == 0 && nullity.back() == c.size) K = k;
      if (K != 0 && k > K) break;
    }
    if (K == 0 || nullity.back() != c.size) return {};
    nullity.resize(K + 1);
    for (std::size_t k = 1; k <= K; ++k) {
      const std::size_t ge_k = nullity[k] - nullity[k - 1];
      const std::size_t ge_k1 = k + 1 <= K ? nullity[k + 1] - nullity[k] : 0;
      if (ge_k1 > ge_k) return {};
      for (std::size_t i = 0; i < ge_k - ge_k1; ++i) c.blocks.push_back(static_cast<int>(k));
    }
    out.push_back(c);
  }
  return out;
}

inline Complex numeric_representative(Complex z, double tol) {
  if (std::abs(z) < 1.0 - tol) return 1.0 / z;
  if (std::abs(z) <= 1.0 + tol && std::arg(z) < 0) return std::conj(z) / std::norm(z);
  return z;
}

}  // namespace detail

/// Numeric canonical form. Eigenvalues of the cosquare are clustered with a
/// gap threshold starting at 10^3 eps and widened by factors of 10 until
/// the Weyr characteristics are consistent; a Jordan block of size k
/// splits its eigenvalue by about (rounding)^(1/k), so a fixed threshold
/// fails for k >= 3.
inline CanonicalForm canonical_form_numeric(const Matrix<Complex>& M, double eps = kDefaultEps) {
  if (!M.square()) throw Error("BadDims", "canonical form needs a square matrix");
  CanonicalForm f;
  const std::size_t n = M.rows();
  if (n == 0) return f;
  const detail::CMat A = detail::to_eigen(M);
  Eigen::FullPivLU<detail::CMat> lu(A);
  lu.setThreshold(eps);
  if (!lu.isInvertible()) throw Error("SingularMatrix", "bilinear form is singular");
  const detail::CMat C = lu.inverse().transpose() * A;
  Eigen::ComplexEigenSolver<detail::CMat> es(C);
  if (es.info() != Eigen::Success) throw Error("UnpairedEigenvalues", "eigenvalue computation did not converge");
  std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
  const double rank_tol = std::max(1e3 * eps, 1e-12);
  for (double tau = 1e3 * eps; tau <= 0.5; tau *= 10) {
    auto clusters = detail::cluster_eigenvalues(C, ev, tau, rank_tol);
    if (clusters.empty()) continue;
    const double pair_tol = std::max(tau, 1e3 * eps);
    CanonicalForm g;
    std::vector<bool> used(clusters.size(), false);
    bool ok = true;
    try {
      for (std::size_t i = 0; i < clusters.size() && ok; ++i) {
        if (used[i]) continue;
        used[i] = true;
        const auto& c = clusters[i];
        if (std::abs(c.center - 1.0) <= pair_tol || std::abs(c.center + 1.0) <= pair_tol) {
          const int sign = std::abs(c.center - 1.0) <= pair_tol ? 1 : -1;
          detail::emit_blocks(g, c.blocks, sign, BlockLambda::numeric(Complex(sign, 0)), nullptr);
          continue;
        }
        std::size_t j = 0;
        for (; j < clusters.size(); ++j)
          if (!used[j] && std::abs(c.center * clusters[j].center - 1.0) <= pair_tol) break;
        if (j == clusters.size()) {
          ok = false;
          break;
        }
        used[j] = true;
        // average the two estimates of λ
        const Complex lam = 0.5 * (c.center + 1.0 / clusters[j].center);
        detail::emit_blocks(g, c.blocks, 0, BlockLambda::numeric(detail::numeric_representative(lam, pair_tol)),
                            &clusters[j].blocks);
      }
    } catch (const Error& e) {
      if (e.code() != "UnpairedEigenvalues") throw;
      ok = false;
    }
    if (!ok) continue;
    sort_blocks(g);
    return g;
  }
  throw Error("UnpairedEigenvalues",
              "eigenvalues of the cosquare could not be clustered and paired; try a smaller eps or exact mode");
}

template <class S>
CanonicalForm canonical_form(const Matrix<S>& M, double eps = kDefaultEps) {
  if constexpr (std::is_same_v<S, Complex>) return canonical_form_numeric(M, eps);
  else {
    (void)eps;
    return canonical_form_exact(M);
  }
}

template <class S>
bool congruent(const Matrix<S>& A, const Matrix<S>& B, double eps = kDefaultEps) {
  if (!A.square() || !B.square() || A.rows() != B.rows()) throw Error("BadDims", "congruence needs square matrices of equal size");
  return same_form(canonical_form(A, eps), canonical_form(B, eps), std::max(1e3 * eps, 1e-9));
}

/// Matrix realizing a canonical form over S. Numeric labels need S = Complex;
/// quadratic-pair labels have no realization over the ground field.
template <class S>
Matrix<S> realize(const CanonicalForm& f) {
  std::vector<Matrix<S>> parts;
  for (const auto& b : f.blocks) {
    if (b.kind != BlockKind::H) {
      parts.push_back(build_block<S>(b.kind, b.size));
      continue;
    }
    if constexpr (std::is_same_v<S, Complex>) {
      if (b.lambda.kind == BlockLambda::Kind::Numeric) {
        parts.push_back(h_matrix<S>(b.size, b.lambda.z));
        continue;
      }
      if (b.lambda.kind == BlockLambda::Kind::Exact) {
        throw Error("Unsupported", "exact label needs a specialization point");
      }
    } else if constexpr (std::is_same_v<S, FieldElement>) {
      if (b.lambda.kind == BlockLambda::Kind::Exact) {
        parts.push_back(h_matrix<S>(b.size, b.lambda.value));
        continue;
      }
    }
    throw Error("Unsupported", "block label cannot be realized over this scalar type");
  }
  return block_sum(parts);
}

}  // namespace webcat
