#pragma once

// Solutions of the trace equation tr(M^T M^-1) = target up to congruence.
// Over canonical forms the statistic is additive: Γ_j contributes
// (-1)^{j+1} j and H_2k(λ) contributes k(λ + 1/λ).

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "webcat/congruence.hpp"
#include "webcat/matrix.hpp"
#include "webcat/qscalar.hpp"
#include "webcat/scalar.hpp"
#include "webcat/webdiag.hpp"

namespace webcat {

// ------------------------------------------------------------ quadratic extension

/// B[x]/(x^2 + b x + 1). Elements built without a modulus (zero, one,
/// integers) adopt the modulus of the other operand.
template <class B>
class QuadExt {
 public:
  using T = scalar_traits<B>;

  QuadExt() : a_(T::zero()), b_(T::zero()) {}
  explicit QuadExt(B a) : a_(std::move(a)), b_(T::zero()) {}
  QuadExt(B a, B b, B modulus) : a_(std::move(a)), b_(std::move(b)), mod_(std::move(modulus)) {}

  /// The class of x itself.
  static QuadExt generator(const B& modulus) { return QuadExt(T::zero(), T::one(), modulus); }

  const B& a() const { return a_; }
  const B& b() const { return b_; }
  const std::optional<B>& modulus() const { return mod_; }
  bool in_base() const { return T::is_zero(b_, 0); }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    return {x.a_ + y.a_, x.b_ + y.b_, join(x, y), x.mod_ || y.mod_};
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    return {x.a_ - y.a_, x.b_ - y.b_, join(x, y), x.mod_ || y.mod_};
  }
  QuadExt operator-() const { return {-a_, -b_, mod_.value_or(T::zero()), mod_.has_value()}; }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    const B m = join(x, y);
    // x^2 = -m x - 1
    const B bb = x.b_ * y.b_;
    return {x.a_ * y.a_ - bb, x.a_ * y.b_ + x.b_ * y.a_ - m * bb, m, x.mod_ || y.mod_};
  }
  QuadExt& operator+=(const QuadExt& y) { return *this = *this + y; }
  QuadExt& operator-=(const QuadExt& y) { return *this = *this - y; }
  QuadExt& operator*=(const QuadExt& y) { return *this = *this * y; }

  QuadExt inverse() const {
    if (in_base()) return QuadExt(T::inv(a_), T::zero(), mod_.value_or(T::zero()), mod_.has_value());
    const B m = mod_.value();
    // conjugate of x is -m - x
    const B norm = a_ * a_ - a_ * b_ * m + b_ * b_;
    if (T::is_zero(norm, 0)) throw Error("DivisionByZero", "zero divisor in quadratic extension");
    const B inv = T::inv(norm);
    return {(a_ - b_ * m) * inv, -b_ * inv, m};
  }

  friend bool operator==(const QuadExt& x, const QuadExt& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

 private:
  QuadExt(B a, B b, B modulus, bool has) : a_(std::move(a)), b_(std::move(b)) {
    if (has) mod_ = std::move(modulus);
  }
  static B join(const QuadExt& x, const QuadExt& y) {
    if (x.mod_) return *x.mod_;
    if (y.mod_) return *y.mod_;
    return T::zero();
  }
  B a_, b_;
  std::optional<B> mod_;
};

template <class B>
struct scalar_traits<QuadExt<B>> {
  static constexpr bool exact = scalar_traits<B>::exact;
  static QuadExt<B> zero() { return QuadExt<B>(); }
  static QuadExt<B> one() { return QuadExt<B>(scalar_traits<B>::one()); }
  static QuadExt<B> from_int(long k) { return QuadExt<B>(scalar_traits<B>::from_int(k)); }
  static bool is_zero(const QuadExt<B>& x, double eps = 0) {
    return scalar_traits<B>::is_zero(x.a(), eps) && scalar_traits<B>::is_zero(x.b(), eps);
  }
  static QuadExt<B> inv(const QuadExt<B>& x) { return x.inverse(); }
  static double magnitude(const QuadExt<B>& x) { return is_zero(x) ? 0.0 : 1.0; }
  static std::string str(const QuadExt<B>& x) {
    if (x.in_base()) return scalar_traits<B>::str(x.a());
    return "(" + scalar_traits<B>::str(x.a()) + ") + (" + scalar_traits<B>::str(x.b()) + ")*x";
  }
};

// ------------------------------------------------------------ square roots

namespace detail {

inline std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  if (!mpz_perfect_square_p(r.get_num().get_mpz_t()) || !mpz_perfect_square_p(r.get_den().get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class n = sqrt(r.get_num()), d = sqrt(r.get_den());
  return Rational(n, d);
}

inline std::optional<LaurentPoly> laurent_sqrt(const LaurentPoly& p) {
  if (p.is_zero()) return LaurentPoly();
  const int lo = p.low(), hi = p.high();
  if (lo % 2 != 0 || (hi - lo) % 2 != 0) return std::nullopt;
  const int half = (hi - lo) / 2;
  auto lead = rational_sqrt(p.leading());
  if (!lead) return std::nullopt;
  // coefficients s_0..s_half of the square root of p shifted to degree 0
  std::vector<Rational> s(static_cast<std::size_t>(half) + 1, Rational(0));
  s[static_cast<std::size_t>(half)] = *lead;
  for (int k = 1; k <= half; ++k) {
    const int deg = 2 * half - k;  // coefficient of x^deg in s^2
    Rational acc = p.coeff(lo + deg);
    for (int i = half - k + 1; i <= half; ++i) {
      const int j = deg - i;
      if (j > half - k && j <= half) acc -= s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(j)];
    }
    s[static_cast<std::size_t>(half - k)] = acc / (2 * *lead);
  }
  LaurentPoly::Terms t;
  for (int i = 0; i <= half; ++i)
    if (s[static_cast<std::size_t>(i)] != 0) t[i + lo / 2] = s[static_cast<std::size_t>(i)];
  LaurentPoly r = LaurentPoly::from_terms(t);
  if (!(r * r == p)) return std::nullopt;
  return r;
}

inline std::optional<FieldElement> exact_sqrt(const FieldElement& x) {
  auto n = laurent_sqrt(x.num());
  auto d = laurent_sqrt(x.den());
  if (!n || !d) return std::nullopt;
  return FieldElement(*n, *d);
}
inline std::optional<Rational> exact_sqrt(const Rational& x) { return rational_sqrt(x); }
inline std::optional<Complex> exact_sqrt(const Complex& x) { return std::sqrt(x); }

}  // namespace detail

// ------------------------------------------------------------ targets

/// Value of the circle in terms of q: sl2 -[2], gl2 [2], so3 [3].
template <class S>
S target_value(Category c, const S& q) {
  using T = scalar_traits<S>;
  const S qi = T::inv(q);
  switch (c) {
    case Category::sl2: return -(q + qi);
    case Category::gl2: return q + qi;
    case Category::so3: return q * q + T::one() + qi * qi;
  }
  return T::zero();
}

/// Fusion-rule dimensions d_{k+1} = n d_k - d_k - d_{k-1} of the simple
/// so3 objects must stay positive; this excludes n <= 2 although the
/// trace equation alone has solutions there.
inline bool so3_dimension_feasible(int n, int depth = 40) {
  long double prev = 1, cur = n;
  for (int k = 1; k < depth; ++k) {
    if (cur < 1) return false;
    const long double next = (n - 1) * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur >= 1;
}

// ------------------------------------------------------------ families

struct BlockStructure {
  std::vector<int> gammas;  // Γ sizes, nonincreasing
  std::vector<int> hs;      // H half-sizes, nonincreasing

  int gamma_contribution() const {
    int g = 0;
    for (int j : gammas) g += (j % 2 == 1) ? j : -j;
    return g;
  }
  int dimension() const {
    int d = 0;
    for (int j : gammas) d += j;
    for (int k : hs) d += 2 * k;
    return d;
  }
  friend bool operator<(const BlockStructure& a, const BlockStructure& b) {
    return std::tie(a.gammas, a.hs) < std::tie(b.gammas, b.hs);
  }
  friend bool operator==(const BlockStructure& a, const BlockStructure& b) {
    return a.gammas == b.gammas && a.hs == b.hs;
  }
};

inline std::string to_string(const BlockStructure& s) {
  std::string out;
  for (int j : s.gammas) out += (out.empty() ? "" : " + ") + std::string("Gamma_") + std::to_string(j);
  for (std::size_t i = 0; i < s.hs.size(); ++i) {
    const std::string name = i + 1 == s.hs.size() ? "lambda" : "mu" + std::to_string(i + 1);
    out += (out.empty() ? "" : " + ") + std::string("H_") + std::to_string(2 * s.hs[i]) + "(" + name + ")";
  }
  return out;
}

namespace detail {

inline void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitions(n, n, cur, out);
  return out;
}

}  // namespace detail

/// All block structures of total size n, in lexicographic order.
inline std::vector<BlockStructure> block_structures(int n) {
  std::vector<BlockStructure> out;
  for (int h = 0; 2 * h <= n; ++h)
    for (const auto& hp : detail::partitions(h))
      for (const auto& gp : detail::partitions(n - 2 * h)) out.push_back({gp, hp});
  std::sort(out.begin(), out.end());
  return out;
}

/// One family of solutions. The last H block's λ solves
///   a λ^2 + (b + Σ_i k_i (μ_i + 1/μ_i)) λ + a = 0
/// with a = k_last, b = Σ Γ contributions - target, and free parameters μ_i
/// for the other H blocks (k_i = their half-sizes).
template <class S>
struct SolutionFamily {
  BlockStructure structure;
  bool parametric = false;
  S a{}, b{};
  /// Roots of the quadratic when they lie in the ground field (only for
  /// a single H block).
  std::optional<std::pair<S, S>> roots;
  bool contains_standard = false;

  std::size_t free_parameters() const { return structure.hs.empty() ? 0 : structure.hs.size() - 1; }
};

/// All-Γ structure that solves the trace equation only at special q: the
/// q with target(q) = gamma contribution, as a polynomial in q (low to high).
struct SpecialSolution {
  BlockStructure structure;
  std::vector<long> q_polynomial;
  std::vector<Complex> q_roots;
};

template <class S>
struct Enumeration {
  std::vector<SolutionFamily<S>> families;
  std::vector<SpecialSolution> special;
};

namespace detail {

inline std::vector<Complex> quadratic_roots(Complex a, Complex b, Complex c) {
  const Complex d = std::sqrt(b * b - 4.0 * a * c);
  return {(-b + d) / (2.0 * a), (-b - d) / (2.0 * a)};
}

inline SpecialSolution special_solution(Category c, const BlockStructure& s) {
  const long g = s.gamma_contribution();
  SpecialSolution out{s, {}, {}};
  switch (c) {
    case Category::sl2:  // -(q + 1/q) = g
      out.q_polynomial = {1, g, 1};
      out.q_roots = quadratic_roots(1.0, static_cast<double>(g), 1.0);
      break;
    case Category::gl2:  // q + 1/q = g
      out.q_polynomial = {1, -g, 1};
      out.q_roots = quadratic_roots(1.0, static_cast<double>(-g), 1.0);
      break;
    case Category::so3: {  // q^2 + 1 + q^-2 = g
      out.q_polynomial = {1, 0, 1 - g, 0, 1};
      for (const Complex& w : quadratic_roots(1.0, static_cast<double>(1 - g), 1.0)) {
        out.q_roots.push_back(std::sqrt(w));
        out.q_roots.push_back(-std::sqrt(w));
      }
      break;
    }
  }
  return out;
}

template <class S>
std::optional<std::pair<S, S>> solve_quadratic(const S& a, const S& b, const S& c) {
  using T = scalar_traits<S>;
  const S disc = b * b - T::from_int(4) * a * c;
  auto r = exact_sqrt(disc);
  if (!r) return std::nullopt;
  const S inv = T::inv(T::from_int(2) * a);
  S x = (-b + *r) * inv, y = (-b - *r) * inv;
  return std::make_pair(x, y);
}

inline bool prefer_root(const FieldElement& x, const FieldElement& y) { return prefer_representative(x, y); }
inline bool prefer_root(const Rational& x, const Rational& y) { return abs(x) >= abs(y); }
inline bool prefer_root(const Complex& x, const Complex& y) {
  if (std::abs(std::abs(x) - std::abs(y)) > 1e-12) return std::abs(x) > std::abs(y);
  return std::arg(x) >= 0;
}

}  // namespace detail

/// Matrix id_{n-2} ⊕ [[0, 1], [x, 0]] with x + 1/x = target - (n - 2),
/// whose trace statistic is the target.
template <class B>
struct Witness {
  bool in_base = true;
  Matrix<B> matrix;                // when in_base
  Matrix<QuadExt<B>> ext_matrix;   // otherwise, x = class of the generator
  B x_linear;                      // x solves x^2 + x_linear x + 1 = 0
};

template <class S>
Witness<S> existence_witness(Category c, int n, const S& q, double eps = kDefaultEps) {
  using T = scalar_traits<S>;
  const int min_n = c == Category::so3 ? 3 : 2;
  if (n < min_n) throw Error("NoSolution", category_name(c) + " has no witness in dimension " + std::to_string(n));
  const S t = target_value(c, q) - T::from_int(n - 2);
  Witness<S> w;
  w.x_linear = -t;
  const std::size_t N = static_cast<std::size_t>(n);
  auto roots = detail::solve_quadratic(T::one(), S(-t), T::one());
  if (roots) {
    const S x = detail::prefer_root(roots->first, roots->second) ? roots->first : roots->second;
    if (T::is_zero(x, eps)) throw Error("NoSolution", "degenerate witness");
    w.matrix = Matrix<S>::identity(N);
    w.matrix(N - 2, N - 2) = T::zero();
    w.matrix(N - 1, N - 1) = T::zero();
    w.matrix(N - 2, N - 1) = T::one();
    w.matrix(N - 1, N - 2) = x;
    return w;
  }
  using E = QuadExt<S>;
  w.in_base = false;
  w.ext_matrix = Matrix<E>(N, N);
  for (std::size_t i = 0; i + 2 < N; ++i) w.ext_matrix(i, i) = E(T::one());
  w.ext_matrix(N - 2, N - 1) = E(T::one());
  w.ext_matrix(N - 1, N - 2) = E::generator(w.x_linear);
  return w;
}

/// Enumerates all families for the given category and dimension at the q
/// carried by S: FieldElement (generic q, pass FieldElement::q()), Rational
/// or Complex (a specific q).
template <class S>
Enumeration<S> enumerate_solutions(Category c, int n, const S& q, double eps = kDefaultEps) {
  using T = scalar_traits<S>;
  if (n < 1) throw Error("BadDims", "dimension must be positive");
  Enumeration<S> out;
  if (c == Category::so3 && !so3_dimension_feasible(n)) return out;
  const S target = target_value(c, q);
  const bool generic = std::is_same_v<S, FieldElement>;
  std::optional<CanonicalForm> standard;
  const int standard_n = c == Category::so3 ? 3 : 2;
  if (n == standard_n) {
    Witness<S> w = existence_witness(c, n, q, eps);
    if (w.in_base) standard = canonical_form(w.matrix, eps);
  }
  for (const BlockStructure& s : block_structures(n)) {
    const S g = T::from_int(s.gamma_contribution());
    if (s.hs.empty()) {
      if (generic) {
        out.special.push_back(detail::special_solution(c, s));
        continue;
      }
      if (!T::is_zero(g - target, eps)) continue;
      SolutionFamily<S> f;
      f.structure = s;
      if (standard) {
        CanonicalForm cf;
        for (int j : s.gammas) cf.blocks.push_back(gamma_block(j));
        f.contains_standard = same_form(cf, *standard, 1e3 * eps);
      }
      out.families.push_back(f);
      continue;
    }
    SolutionFamily<S> f;
    f.structure = s;
    f.parametric = s.hs.size() > 1;
    const int k = s.hs.back();
    f.a = T::from_int(k);
    f.b = g - target;
    if (!f.parametric) {
      // λ = (-1)^{k+1} is not an admissible label; then it is a double root
      const S bad = T::from_int(k % 2 == 1 ? 1 : -1);
      if (T::is_zero(f.a * bad * bad + f.b * bad + f.a, eps)) continue;
      f.roots = detail::solve_quadratic(f.a, f.b, f.a);
      if (f.roots && !detail::prefer_root(f.roots->first, f.roots->second)) std::swap(f.roots->first, f.roots->second);
      if (standard && s.hs.size() == 1) {
        // the family contains the standard solution iff the Γ parts agree
        // and the standard λ solves the family's quadratic
        CanonicalForm gam;
        std::optional<Block> hb;
        for (const auto& b : standard->blocks) {
          if (b.kind == BlockKind::H) hb = b;
          else gam.blocks.push_back(b);
        }
        CanonicalForm mine;
        for (int j : s.gammas) mine.blocks.push_back(gamma_block(j));
        if (hb && hb->size == k && same_form(gam, mine)) {
          const BlockLambda& l = hb->lambda;
          if constexpr (std::is_same_v<S, Complex>) {
            if (l.kind == BlockLambda::Kind::Numeric) {
              f.contains_standard = std::abs(f.a * l.z * l.z + f.b * l.z + f.a) <= 1e3 * eps * std::max(1.0, std::norm(l.z));
            }
          } else {
            if (l.kind == BlockLambda::Kind::Exact) {
              if constexpr (std::is_same_v<S, FieldElement>) {
                f.contains_standard = (f.a * l.value * l.value + f.b * l.value + f.a).is_zero();
              } else {
                if (l.value.is_laurent() && l.value.num().low() >= 0 && l.value.num().high() <= 0) {
                  const Rational z = l.value.num().coeff(0);
                  f.contains_standard = f.a * z * z + f.b * z + f.a == 0;
                }
              }
            } else if (l.kind == BlockLambda::Kind::QuadraticPair) {
              f.contains_standard = (detail::to_field(S(-f.b / f.a)) == l.value);
            }
          }
        }
      }
    }
    out.families.push_back(f);
  }
  return out;
}

/// True iff there is no solution in dimension 1 (so3: in dimensions 1 and 2).
template <class S>
bool n1_nonexistence(Category c, const S& q, double eps = kDefaultEps) {
  if (!enumerate_solutions(c, 1, q, eps).families.empty()) return false;
  if (c == Category::so3 && !enumerate_solutions(c, 2, q, eps).families.empty()) return false;
  return true;
}

/// Numeric matrix realizing a family: μ_i are given for the free
/// parameters and λ is the preferred root of the residual quadratic.
inline Matrix<Complex> realize_family(const BlockStructure& s, Complex a, Complex b, const std::vector<Complex>& mus) {
  std::vector<Matrix<Complex>> parts;
  for (int j : s.gammas) parts.push_back(gamma_matrix<Complex>(j));
  if (!s.hs.empty()) {
    if (mus.size() + 1 != s.hs.size()) throw Error("BadDims", "wrong number of free parameters");
    for (std::size_t i = 0; i < mus.size(); ++i) {
      parts.push_back(h_matrix<Complex>(s.hs[i], mus[i]));
      b += static_cast<double>(s.hs[i]) * (mus[i] + 1.0 / mus[i]);
    }
    auto r = detail::quadratic_roots(a, b, a);
    parts.push_back(h_matrix<Complex>(s.hs.back(), detail::prefer_root(r[0], r[1]) ? r[0] : r[1]));
  }
  return block_sum(parts);
}

}  // namespace webcat
