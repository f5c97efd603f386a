#pragma once

// Exact arithmetic in Q(v) with v^2 = q, and numeric specialization.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <complex>
#include <cstdint>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "webcat/error.hpp"

namespace webcat {

using Rational = mpq_class;
using Complex = std::complex<double>;

inline constexpr double kDefaultEps = 1e-9;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational parse_rational(const std::string& s) {
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0) {
    throw Error("ParseError", "not a rational number: '" + s + "'");
  }
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Complex to_complex(const Rational& r) { return Complex(r.get_d(), 0.0); }

/// Laurent polynomial in v with rational coefficients. No stored
/// coefficient is zero.
class LaurentPoly {
 public:
  using Terms = std::map<int, Rational>;

  LaurentPoly() = default;
  LaurentPoly(long c) { if (c != 0) terms_.emplace(0, Rational(c)); }  // NOLINT
  LaurentPoly(const Rational& c) { if (c != 0) terms_.emplace(0, c); }  // NOLINT

  static LaurentPoly monomial(int exp, const Rational& c = 1) {
    LaurentPoly p;
    if (c != 0) p.terms_.emplace(exp, c);
    return p;
  }
  static LaurentPoly from_terms(const Terms& t) {
    LaurentPoly p;
    for (const auto& [e, c] : t) if (c != 0) p.terms_.emplace(e, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1; }
  int low() const { return terms_.begin()->first; }
  int high() const { return terms_.rbegin()->first; }
  const Rational& leading() const { return terms_.rbegin()->second; }
  Rational coeff(int e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  LaurentPoly shifted(int k) const {
    LaurentPoly p;
    for (const auto& [e, c] : terms_) p.terms_.emplace_hint(p.terms_.end(), e + k, c);
    return p;
  }
  LaurentPoly scaled(const Rational& s) const {
    if (s == 0) return {};
    LaurentPoly p;
    for (const auto& [e, c] : terms_) p.terms_.emplace_hint(p.terms_.end(), e, c * s);
    return p;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) {
      auto [it, fresh] = terms_.emplace(e, c);
      if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
      }
    }
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) {
      auto [it, fresh] = terms_.emplace(e, -c);
      if (!fresh) {
        it->second -= c;
        if (it->second == 0) terms_.erase(it);
      }
    }
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  LaurentPoly operator-() const { return scaled(-1); }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        auto [it, fresh] = p.terms_.emplace(ea + eb, ca * cb);
        if (!fresh) it->second += ca * cb;
      }
    }
    for (auto it = p.terms_.begin(); it != p.terms_.end();) {
      it = it->second == 0 ? p.terms_.erase(it) : std::next(it);
    }
    return p;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  Complex evaluate(Complex v) const {
    Complex acc(0.0, 0.0);
    for (const auto& [e, c] : terms_) acc += c.get_d() * std::pow(v, e);
    return acc;
  }
  /// Exact value at a nonzero rational point.
  Rational evaluate(const Rational& v) const {
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
      Rational p(1);
      Rational base = e >= 0 ? v : Rational(1) / v;
      for (int i = 0; i < (e >= 0 ? e : -e); ++i) p *= base;
      acc += c * p;
    }
    return acc;
  }

 private:
  Terms terms_;
};

namespace detail {

// Dense polynomials over Q, index = degree, no trailing zeros.
using Dense = std::vector<Rational>;

inline void trim(Dense& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Dense to_dense(const LaurentPoly& p) {
  if (p.is_zero()) return {};
  Dense d(static_cast<std::size_t>(p.high() - p.low() + 1), Rational(0));
  for (const auto& [e, c] : p.terms()) d[static_cast<std::size_t>(e - p.low())] = c;
  return d;
}

inline LaurentPoly from_dense(const Dense& d, int shift = 0) {
  LaurentPoly::Terms t;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] != 0) t.emplace_hint(t.end(), static_cast<int>(i) + shift, d[i]);
  }
  return LaurentPoly::from_terms(t);
}

/// a = quot*b + rem, b nonzero.
inline void divmod(const Dense& a, const Dense& b, Dense& quot, Dense& rem) {
  rem = a;
  trim(rem);
  quot.clear();
  if (rem.size() < b.size()) return;
  quot.assign(rem.size() - b.size() + 1, Rational(0));
  const Rational inv_lead = Rational(1) / b.back();
  while (!rem.empty() && rem.size() >= b.size()) {
    std::size_t shift = rem.size() - b.size();
    Rational f = rem.back() * inv_lead;
    quot[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] -= f * b[i];
    rem.pop_back();
    trim(rem);
  }
}

inline Dense monic(Dense p) {
  if (p.empty()) return p;
  Rational inv = Rational(1) / p.back();
  for (auto& c : p) c *= inv;
  return p;
}

/// Monic gcd; gcd(0,0) = 0.
inline Dense gcd(Dense a, Dense b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Dense q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = monic(std::move(r));
  }
  return monic(std::move(a));
}

}  // namespace detail

/// Element num/den of Q(v). Canonical: gcd(num, den) = 1, den monic with
/// lowest exponent 0, so equality is structural.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(long c) : num_(c), den_(1) {}                    // NOLINT
  FieldElement(const Rational& c) : num_(c), den_(1) {}         // NOLINT
  FieldElement(LaurentPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT
  FieldElement(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    canonicalize();
  }

  static FieldElement v() { return FieldElement(LaurentPoly::monomial(1)); }
  static FieldElement q() { return FieldElement(LaurentPoly::monomial(2)); }
  static FieldElement v_pow(int k) { return FieldElement(LaurentPoly::monomial(k)); }
  static FieldElement q_pow(int k) { return FieldElement(LaurentPoly::monomial(2 * k)); }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_laurent() const { return den_.is_one(); }

  FieldElement inverse() const {
    if (is_zero()) throw Error("DivisionByZero", "inverse of zero in Q(v)");
    return FieldElement(den_, num_);
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_.is_one() && b.den_.is_one()) return FieldElement(a.num_ + b.num_);
    if (a.den_ == b.den_) return FieldElement(a.num_ + b.num_, a.den_);
    return FieldElement(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }
  FieldElement operator-() const {
    FieldElement r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    if (a.is_zero() || b.is_zero()) return FieldElement();
    if (a.den_.is_one() && b.den_.is_one()) return FieldElement(a.num_ * b.num_);
    return FieldElement(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    if (b.is_zero()) throw Error("DivisionByZero", "division by zero in Q(v)");
    if (a.is_zero()) return FieldElement();
    return FieldElement(a.num_ * b.den_, a.den_ * b.num_);
  }
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  FieldElement pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    FieldElement r(1), b = *this;
    while (k > 0) {
      if (k & 1) r *= b;
      b *= b;
      k >>= 1;
    }
    return r;
  }

  Rational evaluate(const Rational& v0) const {
    if (v0 == 0) throw Error("PoleError", "evaluation at v = 0");
    Rational d = den_.evaluate(v0);
    if (d == 0) throw Error("PoleError", "denominator vanishes at v = " + v0.get_str());
    return num_.evaluate(v0) / d;
  }

 private:
  void canonicalize() {
    if (den_.is_zero()) throw Error("DivisionByZero", "zero denominator in Q(v)");
    if (num_.is_zero()) {
      den_ = LaurentPoly(1);
      return;
    }
    const int shift = num_.low() - den_.low();
    detail::Dense n = detail::to_dense(num_);
    detail::Dense d = detail::to_dense(den_);
    if (d.size() > 1) {
      detail::Dense g = detail::gcd(n, d);
      if (g.size() > 1) {
        detail::Dense q, r;
        detail::divmod(n, g, q, r);
        n = std::move(q);
        detail::divmod(d, g, q, r);
        d = std::move(q);
      }
    }
    const Rational lead = d.back();
    if (lead != 1) {
      for (auto& c : n) c /= lead;
      for (auto& c : d) c /= lead;
    }
    num_ = detail::from_dense(n, shift);
    den_ = detail::from_dense(d, 0);
  }

  LaurentPoly num_;
  LaurentPoly den_{1};
};

/// [k] = (q^k - q^-k)/(q - q^-1) = sum of q^{k-1-2i}, i = 0..k-1.
inline FieldElement quantum_integer(int k) {
  if (k < 0) return -quantum_integer(-k);
  LaurentPoly p;
  for (int i = 0; i < k; ++i) p += LaurentPoly::monomial(2 * (k - 1 - 2 * i));
  return FieldElement(p);
}

inline Complex specialize(const FieldElement& x, Complex v0, double eps = kDefaultEps) {
  if (std::abs(v0) <= eps && !(x.num().is_zero())) {
    throw Error("PoleError", "specialization at v = 0");
  }
  Complex d = x.den().evaluate(v0);
  if (std::abs(d) <= eps) throw Error("PoleError", "denominator vanishes at the sample point");
  return x.num().evaluate(v0) / d;
}

// ---------------------------------------------------------------- text form

inline std::string format_laurent(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<int, Rational>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    int aa = a.first < 0 ? -a.first : a.first, bb = b.first < 0 ? -b.first : b.first;
    if (aa != bb) return aa < bb;
    return a.first > b.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms) {
    const bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    std::string body;
    if (e == 0) {
      body = mag.get_str();
    } else {
      std::string mono = e == 1 ? "v" : "v^" + std::to_string(e);
      body = mag == 1 ? mono : mag.get_str() + "*" + mono;
    }
    if (first) {
      out = neg ? "-" + body : body;
      first = false;
    } else {
      out += neg ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

inline std::string to_string(const FieldElement& x) {
  if (x.is_laurent()) return format_laurent(x.num());
  return "(" + format_laurent(x.num()) + ")/(" + format_laurent(x.den()) + ")";
}

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  FieldElement parse() {
    FieldElement r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("ParseError", what + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  FieldElement expr() {
    FieldElement acc = term();
    for (;;) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else return acc;
    }
  }
  FieldElement term() {
    FieldElement acc = unary();
    for (;;) {
      if (eat('*')) acc *= unary();
      else if (eat('/')) acc /= unary();
      else return acc;
    }
  }
  FieldElement unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  FieldElement power() {
    FieldElement base = atom();
    if (eat('^')) {
      skip();
      bool neg = false;
      if (eat('-')) neg = true;
      else eat('+');
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      int k = std::stoi(s_.substr(start, pos_ - start));
      return base.pow(neg ? -k : k);
    }
    return base;
  }
  FieldElement atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      FieldElement r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (c == 'v') {
      ++pos_;
      return FieldElement::v();
    }
    if (c == 'q') {
      ++pos_;
      return FieldElement::q();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return FieldElement(Rational(mpz_class(s_.substr(start, pos_ - start))));
    }
    fail("unexpected character");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses expressions over v and q with + - * / ^ and parentheses, e.g.
/// "1*v^2 + 1*v^-2", "-1 - v^4 - v^-4", "(v^2 + 1)/(v^4 + 1)".
inline FieldElement parse_field_element(const std::string& s) { return detail::ExprParser(s).parse(); }

inline std::string format_complex(Complex z, int digits = 12) {
  auto fmt = [digits](double x) {
    if (x == 0.0) x = 0.0;  // drop negative zero
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
  };
  std::string out = fmt(z.real());
  if (z.imag() < 0) out += "-" + fmt(-z.imag()) + "i";
  else out += "+" + fmt(z.imag()) + "i";
  return out;
}

/// Accepts "a", "a+bi", "a-bi", "bi", "i".
inline Complex parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw) if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error("ParseError", "empty complex literal");
  auto num = [&](const std::string& t) -> double {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(t, &used);
    } catch (...) {
      throw Error("ParseError", "not a complex number: '" + raw + "'");
    }
    if (used != t.size()) throw Error("ParseError", "not a complex number: '" + raw + "'");
    return x;
  };
  if (s.back() != 'i') return {num(s), 0.0};
  s.pop_back();
  // split at the last sign that is not part of an exponent
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, num(s)};
  return {num(s.substr(0, split)), num(s.substr(split))};
}

}  // namespace webcat
