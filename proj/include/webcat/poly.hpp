#pragma once

// Polynomials over Q used by the trilinear module: dense univariate
// polynomials, sparse polynomials in three variables, and exact counting
// of the common zeros of a polynomial system in the affine and projective
// plane.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "webcat/error.hpp"
#include "webcat/matrix.hpp"
#include "webcat/qscalar.hpp"

namespace webcat::poly {

// ------------------------------------------------------------ univariate

using UPoly = webcat::detail::Dense;
using webcat::detail::divmod;
using webcat::detail::gcd;
using webcat::detail::monic;
using webcat::detail::trim;

inline int degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

inline UPoly add(UPoly a, const UPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim(a);
  return a;
}

inline UPoly scale(UPoly a, const Rational& s) {
  for (auto& c : a) c *= s;
  trim(a);
  return a;
}

inline UPoly sub(const UPoly& a, const UPoly& b) { return add(a, scale(b, Rational(-1))); }

inline UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly c(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

inline UPoly mod(const UPoly& a, const UPoly& m) {
  UPoly q, r;
  divmod(a, m, q, r);
  return r;
}

inline UPoly quotient(const UPoly& a, const UPoly& m) {
  UPoly q, r;
  divmod(a, m, q, r);
  return q;
}

inline UPoly derivative(const UPoly& p) {
  UPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

inline Rational eval(const UPoly& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

/// Product of the distinct irreducible factors, monic.
inline UPoly squarefree(const UPoly& p) {
  if (p.size() <= 1) return monic(p);
  return monic(quotient(p, gcd(p, derivative(p))));
}

/// Inverse of a modulo m when gcd(a, m) = 1.
inline UPoly inverse_mod(const UPoly& a, const UPoly& m) {
  UPoly r0 = m, r1 = mod(a, m), s0, s1{Rational(1)};
  while (!r1.empty()) {
    UPoly q, r;
    divmod(r0, r1, q, r);
    UPoly s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.size() != 1) throw Error("DivisionByZero", "polynomial is not invertible modulo the given factor");
  return mod(scale(s0, Rational(1) / r0[0]), m);
}

/// Polynomial through (xs[i], ys[i]) by Newton divided differences.
inline UPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  const std::size_t n = xs.size();
  std::vector<Rational> c = ys;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  UPoly p;
  for (std::size_t k = n; k-- > 0;) {
    p = mul(p, UPoly{-xs[k], Rational(1)});
    p = add(p, UPoly{c[k]});
  }
  return p;
}

// ------------------------------------------------------------ three variables

using Exponent = std::array<int, 3>;

/// Sparse polynomial in x0, x1, x2 over Q.
class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(const Rational& c) {
    if (c != 0) t_[{0, 0, 0}] = c;
  }
  static MPoly var(int i) {
    MPoly p;
    Exponent e{0, 0, 0};
    e[static_cast<std::size_t>(i)] = 1;
    p.t_[e] = 1;
    return p;
  }
  static MPoly monomial(Exponent e, const Rational& c) {
    MPoly p;
    if (c != 0) p.t_[e] = c;
    return p;
  }

  const std::map<Exponent, Rational>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  Rational coeff(const Exponent& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? Rational(0) : it->second;
  }
  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : t_) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
  }
  int degree_in(int i) const {
    int d = -1;
    for (const auto& [e, c] : t_) d = std::max(d, e[static_cast<std::size_t>(i)]);
    return d;
  }

  MPoly& operator+=(const MPoly& o) {
    for (const auto& [e, c] : o.t_) {
      Rational& x = t_[e];
      x += c;
      if (x == 0) t_.erase(e);
    }
    return *this;
  }
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a += b * Rational(-1); }
  friend MPoly operator*(const MPoly& a, const Rational& s) {
    MPoly p;
    if (s == 0) return p;
    for (const auto& [e, c] : a.t_) p.t_[e] = c * s;
    return p;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly p;
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) {
        Exponent e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
        Rational& x = p.t_[e];
        x += ca * cb;
        if (x == 0) p.t_.erase(e);
      }
    return p;
  }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.t_ == b.t_; }

  MPoly derivative(int i) const {
    MPoly p;
    const auto k = static_cast<std::size_t>(i);
    for (const auto& [e, c] : t_) {
      if (e[k] == 0) continue;
      Exponent f = e;
      --f[k];
      p.t_[f] = c * e[k];
    }
    return p;
  }

  Rational eval(const std::array<Rational, 3>& x) const {
    Rational acc = 0;
    for (const auto& [e, c] : t_) {
      Rational m = c;
      for (std::size_t i = 0; i < 3; ++i)
        for (int k = 0; k < e[i]; ++k) m *= x[i];
      acc += m;
    }
    return acc;
  }

  /// p(L0, L1, L2) for polynomials L_i.
  MPoly compose(const std::array<MPoly, 3>& L) const {
    MPoly out;
    std::map<std::pair<int, int>, MPoly> powers;
    auto power = [&](int i, int k) -> const MPoly& {
      auto key = std::make_pair(i, k);
      auto it = powers.find(key);
      if (it != powers.end()) return it->second;
      MPoly r(Rational(1));
      for (int j = 0; j < k; ++j) r = r * L[static_cast<std::size_t>(i)];
      return powers.emplace(key, r).first->second;
    };
    for (const auto& [e, c] : t_) out += power(0, e[0]) * power(1, e[1]) * power(2, e[2]) * c;
    return out;
  }

  /// Linear change of variables x = A u.
  MPoly substitute(const Matrix<Rational>& A) const {
    std::array<MPoly, 3> L;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) L[i] += var(static_cast<int>(j)) * A(i, j);
    return compose(L);
  }

  /// Sets variable i to the constant c.
  MPoly specialize(int i, const Rational& c) const {
    std::array<MPoly, 3> L{var(0), var(1), var(2)};
    L[static_cast<std::size_t>(i)] = MPoly(c);
    return compose(L);
  }

 private:
  std::map<Exponent, Rational> t_;
};

// ------------------------------------------------------------ zero counting

/// Number of points, or nullopt for infinitely many.
using Count = std::optional<long>;

namespace detail {

// Polynomial in x1 with coefficients in Q[x0]; index = power of x1.
using YPoly = std::vector<UPoly>;

inline YPoly to_ypoly(const MPoly& p) {
  YPoly out;
  for (const auto& [e, c] : p.terms()) {
    if (e[2] != 0) throw Error("BadDims", "expected a polynomial in two variables");
    const auto k = static_cast<std::size_t>(e[1]);
    if (out.size() <= k) out.resize(k + 1);
    UPoly& u = out[k];
    if (u.size() <= static_cast<std::size_t>(e[0])) u.resize(static_cast<std::size_t>(e[0]) + 1, Rational(0));
    u[static_cast<std::size_t>(e[0])] += c;
  }
  for (auto& u : out) trim(u);
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

/// Res_{x1}(p, q) as a polynomial in x0; both must have constant leading
/// coefficients in x1. Computed by evaluation at integer points.
inline UPoly resultant(const YPoly& p, const YPoly& q, int degree_bound) {
  const std::size_t m = p.size() - 1, n = q.size() - 1;
  if (m == 0 && n == 0) return UPoly{Rational(1)};
  std::vector<Rational> xs, ys;
  for (int k = 0; k <= degree_bound; ++k) {
    const Rational x0(k);
    Matrix<Rational> S(m + n, m + n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t i = 0; i <= m; ++i) S(r, r + i) = eval(p[m - i], x0);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t i = 0; i <= n; ++i) S(n + r, r + i) = eval(q[n - i], x0);
    xs.push_back(x0);
    ys.push_back(S.determinant());
  }
  return interpolate(xs, ys);
}

/// Splitting request raised when a leading coefficient is a zero divisor
/// modulo the current factor.
struct Split {
  UPoly factor;
};

inline YPoly reduce(const YPoly& p, const UPoly& h) {
  YPoly out;
  for (const auto& c : p) out.push_back(mod(c, h));
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

/// Strips zero leading coefficients and makes the polynomial monic; a
/// leading coefficient sharing a factor with h raises Split.
inline YPoly normalize(YPoly p, const UPoly& h) {
  p = reduce(p, h);
  if (p.empty()) return p;
  const UPoly g = gcd(p.back(), h);
  if (g.size() > 1) throw Split{g};
  const UPoly inv = inverse_mod(p.back(), h);
  for (auto& c : p) c = mod(mul(c, inv), h);
  return p;
}

inline YPoly rem(YPoly a, const YPoly& b, const UPoly& h) {
  // b monic
  while (!a.empty() && a.size() >= b.size()) {
    const UPoly lead = a.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = mod(sub(a[shift + i], mul(lead, b[i])), h);
    a = reduce(a, h);
  }
  return a;
}

inline YPoly gcd_mod(YPoly a, YPoly b, const UPoly& h) {
  a = normalize(std::move(a), h);
  b = normalize(std::move(b), h);
  while (!b.empty()) {
    YPoly r = normalize(rem(a, b, h), h);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline YPoly y_derivative(const YPoly& p) {
  YPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(scale(p[i], Rational(static_cast<long>(i))));
  while (!d.empty() && d.back().empty()) d.pop_back();
  return d;
}

/// Σ deg(h_i) * (number of distinct roots in x1 of the common gcd over
/// Q[x0]/(h_i)), splitting h on demand. Components with a rational x0 and
/// a single x1 root contribute their point to `points`.
inline long count_over(const UPoly& h, const std::vector<YPoly>& polys,
                       std::vector<std::pair<Rational, Rational>>& points) {
  if (h.size() <= 1) return 0;
  try {
    YPoly g;
    for (const auto& p : polys) g = gcd_mod(g, p, h);
    if (g.empty()) throw Error("Internal", "system vanishes on a whole fiber");
    if (g.size() == 1) return 0;
    const YPoly e = gcd_mod(g, y_derivative(g), h);
    if (h.size() == 2 && g.size() == 2) {
      const Rational x0 = -h[0] / h[1];
      points.emplace_back(x0, g[0].empty() ? Rational(0) : Rational(-g[0][0]));
    }
    return static_cast<long>(h.size() - 1) * static_cast<long>(g.size() - e.size());
  } catch (const Split& s) {
    const UPoly other = quotient(h, s.factor);
    return count_over(monic(s.factor), polys, points) + count_over(monic(other), polys, points);
  }
}

}  // namespace detail

/// Zero count of a polynomial system together with those zeros whose
/// coordinates were found to be rational.
struct Solutions {
  Count count;
  std::vector<std::array<Rational, 3>> points;
};

/// Distinct common zeros in C^2 of polynomials in x0, x1 (x2 unused);
/// points are reported as (x0, x1, 1).
inline Solutions solve_affine(std::vector<MPoly> polys) {
  std::vector<MPoly> nz;
  for (auto& p : polys)
    if (!p.is_zero()) nz.push_back(std::move(p));
  if (nz.empty()) return {std::nullopt, {}};
  for (const auto& p : nz)
    if (p.total_degree() == 0) return {0L, {}};
  // shear x0 -> x0 + c x1 so every polynomial has a constant leading
  // coefficient in x1
  std::vector<detail::YPoly> ys;
  int bound = 1;
  Rational c;
  for (int attempt = 0;; ++attempt) {
    c = Rational(attempt % 2 == 0 ? attempt / 2 : -(attempt + 1) / 2);
    std::array<MPoly, 3> L{MPoly::var(0) + MPoly::var(1) * c, MPoly::var(1), MPoly::var(2)};
    ys.clear();
    bool ok = true;
    for (const auto& p : nz) {
      detail::YPoly y = detail::to_ypoly(p.compose(L));
      if (y.size() != static_cast<std::size_t>(p.total_degree()) + 1 || y.back().size() != 1) {
        ok = false;
        break;
      }
      ys.push_back(std::move(y));
    }
    if (ok) break;
    if (attempt > 64) throw Error("Internal", "no admissible shear found");
  }
  for (const auto& p : nz) bound = std::max(bound, p.total_degree());
  // two generic combinations of the system: their resultant vanishes
  // identically only when the zero set has a curve component
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> coef(-9, 9);
  UPoly R;
  for (int attempt = 0; attempt < 12 && R.empty(); ++attempt) {
    detail::YPoly p1, p2;
    for (const auto& y : ys) {
      const Rational a(coef(rng)), b(coef(rng));
      if (p1.size() < y.size()) p1.resize(y.size());
      if (p2.size() < y.size()) p2.resize(y.size());
      for (std::size_t k = 0; k < y.size(); ++k) {
        p1[k] = add(p1[k], scale(y[k], a));
        p2[k] = add(p2[k], scale(y[k], b));
      }
    }
    while (!p1.empty() && p1.back().empty()) p1.pop_back();
    while (!p2.empty() && p2.back().empty()) p2.pop_back();
    if (p1.empty() || p2.empty() || p1.back().size() != 1 || p2.back().size() != 1) continue;
    if (p1.size() == 1 || p2.size() == 1) {
      // a combination free of x1 with constant value: no zeros
      if ((p1.size() == 1 && p1[0].size() == 1) || (p2.size() == 1 && p2[0].size() == 1)) return {0L, {}};
    }
    R = detail::resultant(p1, p2, bound * bound);
  }
  if (R.empty()) return {std::nullopt, {}};
  std::vector<std::pair<Rational, Rational>> found;
  Solutions out{detail::count_over(squarefree(R), ys, found), {}};
  // undo the shear
  for (const auto& [u, y] : found) out.points.push_back({u + c * y, y, Rational(1)});
  return out;
}

inline Count count_affine(std::vector<MPoly> polys) { return solve_affine(std::move(polys)).count; }

/// Distinct common zeros in P^2 of homogeneous polynomials.
inline Solutions solve_projective(const std::vector<MPoly>& polys) {
  std::vector<MPoly> chart;
  for (const auto& p : polys) chart.push_back(p.specialize(2, Rational(1)));
  Solutions out = solve_affine(chart);
  if (!out.count) return out;
  long total = *out.count;
  // line z = 0, chart y = 1
  UPoly g;
  bool all_zero = true;
  for (const auto& p : polys) {
    MPoly r = p.specialize(2, Rational(0)).specialize(1, Rational(1));
    UPoly u;
    for (const auto& [e, c] : r.terms()) {
      if (u.size() <= static_cast<std::size_t>(e[0])) u.resize(static_cast<std::size_t>(e[0]) + 1, Rational(0));
      u[static_cast<std::size_t>(e[0])] += c;
    }
    trim(u);
    if (!u.empty()) all_zero = false;
    g = gcd(g, u);
  }
  if (all_zero) return {std::nullopt, {}};
  const UPoly line = squarefree(g);
  total += degree(line);
  if (degree(line) == 1) out.points.push_back({-line[0], Rational(1), Rational(0)});
  bool at_corner = true;
  for (const auto& p : polys)
    if (p.eval({Rational(1), Rational(0), Rational(0)}) != 0) at_corner = false;
  if (at_corner) {
    ++total;
    out.points.push_back({Rational(1), Rational(0), Rational(0)});
  }
  out.count = total;
  return out;
}

inline Count count_projective(const std::vector<MPoly>& polys) { return solve_projective(polys).count; }

}  // namespace webcat::poly
