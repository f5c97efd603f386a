#pragma once

// Invariants of 3x3x3 trilinear forms: slice matrices of linear forms,
// their determinant cubics, the projective type of a ternary cubic, and
// the number of rank-one slices.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "webcat/error.hpp"
#include "webcat/fiber.hpp"
#include "webcat/matrix.hpp"
#include "webcat/poly.hpp"
#include "webcat/qscalar.hpp"

namespace webcat {

enum class Axis { X, Y, Z };

inline int axis_index(Axis a) { return static_cast<int>(a); }

/// 3x3 matrix whose entries are linear forms: entry (i,j) = Σ_h c[i][j][h] x_h.
struct SliceMatrix {
  std::array<std::array<std::array<Rational, 3>, 3>, 3> c{};

  poly::MPoly entry(std::size_t i, std::size_t j) const {
    poly::MPoly p;
    for (int h = 0; h < 3; ++h) p += poly::MPoly::var(h) * c[i][j][static_cast<std::size_t>(h)];
    return p;
  }
  /// Value at the point x.
  Matrix<Rational> at(const std::array<Rational, 3>& x) const {
    Matrix<Rational> m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t h = 0; h < 3; ++h) m(i, j) += c[i][j][h] * x[h];
    return m;
  }
};

/// Homogeneous cubic in x0, x1, x2 (zero allowed).
struct TernaryCubic {
  poly::MPoly f;

  /// Coefficients in the order x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3.
  static const std::array<poly::Exponent, 10>& monomials() {
    static const std::array<poly::Exponent, 10> m{{{3, 0, 0}, {2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {1, 1, 1},
                                                   {1, 0, 2}, {0, 3, 0}, {0, 2, 1}, {0, 1, 2}, {0, 0, 3}}};
    return m;
  }
  static TernaryCubic from_coefficients(const std::array<Rational, 10>& a) {
    TernaryCubic t;
    for (std::size_t i = 0; i < 10; ++i) t.f += poly::MPoly::monomial(monomials()[i], a[i]);
    return t;
  }
  std::array<Rational, 10> coefficients() const {
    std::array<Rational, 10> a;
    for (std::size_t i = 0; i < 10; ++i) a[i] = f.coeff(monomials()[i]);
    return a;
  }
  bool is_zero() const { return f.is_zero(); }
};

struct CubicType {
  int tag = 10;                 // 1..10
  std::optional<Rational> j;    // only for tag 9
};

/// A count of points, nullopt meaning infinitely many.
using PointCount = poly::Count;

struct TrilinearInvariants {
  std::array<PointCount, 3> counts;
  std::array<CubicType, 3> types;
};

enum class Equivalence { Equivalent, NotEquivalent, Inconclusive };

inline std::string to_string(Equivalence e) {
  switch (e) {
    case Equivalence::Equivalent: return "equivalent";
    case Equivalence::NotEquivalent: return "not_equivalent";
    default: return "inconclusive";
  }
}

namespace detail {

inline void require_333(const Tensor3<Rational>& t) {
  if (t.dims() != Tensor3<Rational>::Index{3, 3, 3}) throw Error("BadDims", "trilinear classification needs a 3x3x3 tensor");
}

/// Basis of the right kernel of an exact matrix.
inline std::vector<std::vector<Rational>> kernel(Matrix<Rational> m) {
  const auto pivots = m.eliminate(0);
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Invertible matrix whose leading columns are the given independent vectors.
inline Matrix<Rational> complete_basis(const std::vector<std::vector<Rational>>& cols) {
  Matrix<Rational> A(3, 3);
  std::size_t k = 0;
  for (const auto& v : cols) {
    for (std::size_t i = 0; i < 3; ++i) A(i, k) = v[i];
    ++k;
  }
  for (std::size_t e = 0; e < 3 && k < 3; ++e) {
    Matrix<Rational> trial = A;
    for (std::size_t i = 0; i < 3; ++i) trial(i, k) = i == e ? 1 : 0;
    Matrix<Rational> lead(3, k + 1);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j <= k; ++j) lead(i, j) = trial(i, j);
    if (lead.rank(0) == k + 1) {
      A = trial;
      ++k;
    }
  }
  return A;
}

/// Coefficient vector of a quadric in the monomial basis of degree two.
inline std::vector<Rational> quadric_vector(const poly::MPoly& q) {
  static const std::array<poly::Exponent, 6> m{{{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}}};
  std::vector<Rational> v;
  for (const auto& e : m) v.push_back(q.coeff(e));
  return v;
}

/// Symmetric coefficient tensor f_ijk with f = Σ f_ijk x_i x_j x_k.
inline std::array<std::array<std::array<Rational, 3>, 3>, 3> symmetric_tensor(const poly::MPoly& f) {
  std::array<std::array<std::array<Rational, 3>, 3>, 3> s{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        poly::Exponent e{0, 0, 0};
        ++e[i];
        ++e[j];
        ++e[k];
        long perms = 6;
        for (int x : e) perms /= (x == 3 ? 6 : x == 2 ? 2 : 1);
        s[i][j][k] = f.coeff(e) / perms;
      }
  return s;
}

/// Symbolic-method contraction: each bracket (s1 s2 s3) is a determinant
/// over three symbols, every symbol occurs in exactly three brackets and
/// stands for the cubic's coefficient tensor.
inline Rational contract(const poly::MPoly& f, const std::vector<std::array<int, 3>>& brackets, int symbols) {
  static const std::array<std::pair<std::array<int, 3>, int>, 6> perms{
      {{{0, 1, 2}, 1}, {{1, 2, 0}, 1}, {{2, 0, 1}, 1}, {{0, 2, 1}, -1}, {{2, 1, 0}, -1}, {{1, 0, 2}, -1}}};
  const auto s = symmetric_tensor(f);
  std::vector<std::vector<int>> idx(static_cast<std::size_t>(symbols));
  Rational total = 0;
  auto rec = [&](auto&& self, std::size_t b, int sign) -> void {
    if (b == brackets.size()) {
      Rational prod = sign;
      for (const auto& v : idx) {
        const Rational& x = s[static_cast<std::size_t>(v[0])][static_cast<std::size_t>(v[1])][static_cast<std::size_t>(v[2])];
        if (x == 0) return;
        prod *= x;
      }
      total += prod;
      return;
    }
    for (const auto& [p, sg] : perms) {
      for (std::size_t t = 0; t < 3; ++t) idx[static_cast<std::size_t>(brackets[b][t])].push_back(p[t]);
      self(self, b + 1, sign * sg);
      for (std::size_t t = 0; t < 3; ++t) idx[static_cast<std::size_t>(brackets[b][t])].pop_back();
    }
  };
  rec(rec, 0, 1);
  return total;
}

inline Rational aronhold_s(const poly::MPoly& f) {
  return contract(f, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}, 4);
}

inline Rational aronhold_t(const poly::MPoly& f) {
  return contract(f, {{0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {1, 2, 5}, {3, 4, 5}, {3, 4, 5}}, 6);
}

/// y^2 z - x^3 - a x z^2 - b z^3.
inline poly::MPoly weierstrass(const Rational& a, const Rational& b) {
  using poly::MPoly;
  return MPoly::monomial({0, 2, 1}, 1) + MPoly::monomial({3, 0, 0}, -1) + MPoly::monomial({1, 0, 2}, -a) +
         MPoly::monomial({0, 0, 3}, -b);
}

inline Rational binary_discriminant(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  return b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d;
}

}  // namespace detail

/// Weierstrass-normalized invariants (A, B) of a cubic: for
/// y^2 z = x^3 + a x z^2 + b z^3 they equal (a, b), and a projective
/// change of coordinates rescales them by (λ^4, λ^6).
inline std::pair<Rational, Rational> weierstrass_invariants(const TernaryCubic& c) {
  static const Rational s1 = detail::aronhold_s(detail::weierstrass(1, 0));
  static const Rational t1 = detail::aronhold_t(detail::weierstrass(0, 1));
  return {detail::aronhold_s(c.f) / s1, detail::aronhold_t(c.f) / t1};
}

/// j-invariant of a smooth cubic, normalized to 1728 for y^2 z = x^3 + x z^2.
inline Rational j_invariant(const TernaryCubic& c) {
  const auto [A, B] = weierstrass_invariants(c);
  const Rational den = 4 * A * A * A + 27 * B * B;
  if (den == 0) throw Error("SingularCubic", "j-invariant of a singular cubic");
  return 1728 * 4 * A * A * A / den;
}

/// Slice of T along an axis: axis x gives entry (i,j) = Σ_h t_hij x_h, axis
/// y contracts the middle slot, axis z the last.
inline SliceMatrix slice_matrix(const Tensor3<Rational>& t, Axis axis) {
  detail::require_333(t);
  SliceMatrix m;
  for (const auto& [idx, x] : t.entries()) {
    switch (axis) {
      case Axis::X: m.c[idx[1]][idx[2]][idx[0]] += x; break;
      case Axis::Y: m.c[idx[0]][idx[2]][idx[1]] += x; break;
      case Axis::Z: m.c[idx[0]][idx[1]][idx[2]] += x; break;
    }
  }
  return m;
}

inline TernaryCubic slice_cubic(const Tensor3<Rational>& t, Axis axis) {
  const SliceMatrix m = slice_matrix(t, axis);
  auto e = [&](std::size_t i, std::size_t j) { return m.entry(i, j); };
  TernaryCubic c;
  c.f = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
        e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
  return c;
}

/// Projective type: 1 x^3, 2 x^2y, 3 xy(x-y), 4 xyz, 5 z(x^2+yz),
/// 6 x(x^2+yz), 7 x^3-y^2z, 8 x^3+y^3-xyz, 9 smooth, 10 zero.
inline CubicType classify_cubic(const TernaryCubic& c) {
  using poly::MPoly;
  const MPoly& f = c.f;
  if (f.is_zero()) return {10, std::nullopt};
  std::array<MPoly, 3> grad{f.derivative(0), f.derivative(1), f.derivative(2)};
  Matrix<Rational> P(6, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto v = detail::quadric_vector(grad[i]);
    for (std::size_t r = 0; r < 6; ++r) P(r, i) = v[r];
  }
  const std::size_t e = P.rank(0);
  if (e == 1) return {1, std::nullopt};
  if (e == 2) {
    // a cone: f depends on two coordinates only, the vertex w being the
    // kernel of w -> Σ w_i ∂f/∂x_i
    const auto w = detail::kernel(P);
    Matrix<Rational> B(3, 3);
    // columns: two vectors completing w, then w
    const Matrix<Rational> full = detail::complete_basis({w[0]});
    for (std::size_t i = 0; i < 3; ++i) {
      B(i, 0) = full(i, 1);
      B(i, 1) = full(i, 2);
      B(i, 2) = full(i, 0);
    }
    const MPoly g = f.substitute(B);
    const Rational d = detail::binary_discriminant(g.coeff({3, 0, 0}), g.coeff({2, 1, 0}), g.coeff({1, 2, 0}),
                                                   g.coeff({0, 3, 0}));
    return {d == 0 ? 2 : 3, std::nullopt};
  }
  const poly::Solutions sing = poly::solve_projective({grad[0], grad[1], grad[2]});
  if (!sing.count) throw Error("Internal", "non-conical cubic with a singular curve");
  switch (*sing.count) {
    case 0: return {9, j_invariant(c)};
    case 2: return {6, std::nullopt};
    case 3: return {4, std::nullopt};
    case 1: break;
    default: throw Error("Internal", "unexpected number of singular points");
  }
  // a unique singular point is rational
  if (sing.points.size() != 1) throw Error("IrrationalSingularPoint", "singular point not located");
  const auto& p = sing.points.front();
  Matrix<Rational> H(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      H(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = grad[static_cast<std::size_t>(i)].derivative(j).eval(p);
  const std::size_t r = H.rank(0);
  if (r == 2) return {8, std::nullopt};
  if (r != 1) throw Error("Internal", "singular point of unexpected multiplicity");
  // tangent cone is l^2; the tangent line l = 0 is a component iff f
  // vanishes on it
  std::vector<Rational> l(3);
  for (std::size_t i = 0; i < 3 && l == std::vector<Rational>(3); ++i)
    for (std::size_t j = 0; j < 3; ++j) l[j] = H(i, j);
  Matrix<Rational> L(1, 3);
  for (std::size_t j = 0; j < 3; ++j) L(0, j) = l[j];
  const auto line = detail::kernel(L);
  bool contained = true;
  for (int s = 0; s < 4 && contained; ++s) {
    std::array<Rational, 3> x;
    for (std::size_t i = 0; i < 3; ++i) x[i] = line[0][i] + Rational(s) * line[1][i];
    if (f.eval(x) != 0) contained = false;
  }
  return {contained ? 5 : 7, std::nullopt};
}

/// Number of points [a] in P^2 whose slice has rank exactly one.
inline PointCount rank_one_count(const Tensor3<Rational>& t, Axis axis) {
  using poly::MPoly;
  const SliceMatrix m = slice_matrix(t, axis);
  // locus where the slice vanishes: kernel of the entries' linear forms
  Matrix<Rational> lin(9, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t h = 0; h < 3; ++h) lin(3 * i + j, h) = m.c[i][j][h];
  const auto zero_locus = detail::kernel(lin);
  if (zero_locus.size() == 3) return 0L;
  std::vector<MPoly> minors;
  for (std::size_t r0 = 0; r0 < 3; ++r0)
    for (std::size_t r1 = r0 + 1; r1 < 3; ++r1)
      for (std::size_t c0 = 0; c0 < 3; ++c0)
        for (std::size_t c1 = c0 + 1; c1 < 3; ++c1)
          minors.push_back(m.entry(r0, c0) * m.entry(r1, c1) - m.entry(r0, c1) * m.entry(r1, c0));
  if (zero_locus.size() == 2) {
    // count only off the line where the slice vanishes
    const Matrix<Rational> A = detail::complete_basis(zero_locus);
    std::vector<MPoly> chart;
    for (const auto& q : minors) chart.push_back(q.substitute(A).specialize(2, Rational(1)));
    return poly::count_affine(chart);
  }
  const PointCount all = poly::count_projective(minors);
  if (!all) return all;
  return zero_locus.empty() ? *all : *all - 1;
}

inline TrilinearInvariants invariants(const Tensor3<Rational>& t) {
  detail::require_333(t);
  TrilinearInvariants inv;
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
    const auto k = static_cast<std::size_t>(axis_index(a));
    inv.counts[k] = rank_one_count(t, a);
    inv.types[k] = classify_cubic(slice_cubic(t, a));
  }
  return inv;
}

/// Equivalence test by matching (count, type) data under a simultaneous
/// permutation of the three axes. A match that involves smooth cubics with
/// equal j is not decisive and is reported as Inconclusive.
inline Equivalence equivalent(const TrilinearInvariants& a, const TrilinearInvariants& b) {
  std::array<int, 3> perm{0, 1, 2};
  do {
    bool match = true;
    bool elliptic = false;
    for (std::size_t i = 0; i < 3 && match; ++i) {
      const auto k = static_cast<std::size_t>(perm[i]);
      if (a.counts[i] != b.counts[k] || a.types[i].tag != b.types[k].tag) match = false;
      else if (a.types[i].tag == 9) {
        if (a.types[i].j != b.types[k].j) match = false;
        elliptic = true;
      }
    }
    if (match) return elliptic ? Equivalence::Inconclusive : Equivalence::Equivalent;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Equivalence::NotEquivalent;
}

inline Equivalence equivalent(const Tensor3<Rational>& t, const Tensor3<Rational>& u) {
  return equivalent(invariants(t), invariants(u));
}

/// T after the change of basis (A, B, C) on its three slots:
/// t'_abc = Σ A_ia B_jb C_kc t_ijk.
inline Tensor3<Rational> transform(const Tensor3<Rational>& t, const Matrix<Rational>& A, const Matrix<Rational>& B,
                                   const Matrix<Rational>& C) {
  const auto d = t.dims();
  if (A.rows() != d[0] || B.rows() != d[1] || C.rows() != d[2]) throw Error("BadDims", "change of basis does not fit the tensor");
  Tensor3<Rational> out(A.cols(), B.cols(), C.cols());
  std::map<Tensor3<Rational>::Index, Rational> acc;
  for (const auto& [idx, x] : t.entries())
    for (std::size_t a = 0; a < A.cols(); ++a) {
      if (A(idx[0], a) == 0) continue;
      for (std::size_t b = 0; b < B.cols(); ++b) {
        if (B(idx[1], b) == 0) continue;
        for (std::size_t c = 0; c < C.cols(); ++c)
          if (C(idx[2], c) != 0) acc[{a, b, c}] += A(idx[0], a) * B(idx[1], b) * C(idx[2], c) * x;
      }
    }
  for (const auto& [idx, x] : acc) out.set(idx[0], idx[1], idx[2], x);
  return out;
}

/// The diagonal tensor t_000 = t_111 = t_222 = 1.
inline Tensor3<Rational> diagonal_tensor() {
  Tensor3<Rational> t(3, 3, 3);
  for (std::size_t i = 0; i < 3; ++i) t.set(i, i, i, 1);
  return t;
}

/// The Veronese cuboid: six entries ±1 on the permutations of (0,1,2), with
/// x-slice [[0,x2,-x1],[-x2,0,-x0],[x1,x0,0]].
inline Tensor3<Rational> veronese_cuboid() {
  Tensor3<Rational> t(3, 3, 3);
  t.set(0, 1, 2, -1);
  t.set(0, 2, 1, 1);
  t.set(1, 0, 2, -1);
  t.set(1, 2, 0, 1);
  t.set(2, 1, 0, -1);
  t.set(2, 0, 1, 1);
  return t;
}

}  // namespace webcat
