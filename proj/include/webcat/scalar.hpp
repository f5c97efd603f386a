#pragma once

// Uniform interface over the scalar types used by the templated modules:
// FieldElement (exact Q(v)), Rational (exact Q) and Complex (numeric).

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "webcat/qscalar.hpp"

namespace webcat {

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<FieldElement> {
  static constexpr bool exact = true;
  static FieldElement zero() { return FieldElement(); }
  static FieldElement one() { return FieldElement(1); }
  static FieldElement from_int(long k) { return FieldElement(k); }
  static bool is_zero(const FieldElement& x, double = 0) { return x.is_zero(); }
  static FieldElement inv(const FieldElement& x) { return x.inverse(); }
  static double magnitude(const FieldElement& x) { return x.is_zero() ? 0.0 : 1.0; }
  static std::string str(const FieldElement& x) { return to_string(x); }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long k) { return Rational(k); }
  static bool is_zero(const Rational& x, double = 0) { return x == 0; }
  static Rational inv(const Rational& x) {
    if (x == 0) throw Error("DivisionByZero", "inverse of zero");
    return Rational(1) / x;
  }
  static double magnitude(const Rational& x) { return std::abs(x.get_d()); }
  static std::string str(const Rational& x) { return x.get_str(); }
};

template <>
struct scalar_traits<Complex> {
  static constexpr bool exact = false;
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex from_int(long k) { return {static_cast<double>(k), 0.0}; }
  static bool is_zero(const Complex& x, double eps = kDefaultEps) { return std::abs(x) <= eps; }
  static Complex inv(const Complex& x) {
    if (x == Complex(0.0, 0.0)) throw Error("DivisionByZero", "inverse of zero");
    return Complex(1.0, 0.0) / x;
  }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static std::string str(const Complex& x) { return format_complex(x); }
};

/// Size of a residual for reporting. Exact zero reports 0; a nonzero exact
/// residual is measured at a fixed generic sample point.
inline double residual_size(const FieldElement& x) {
  if (x.is_zero()) return 0.0;
  try {
    return std::abs(specialize(x, std::polar(1.13, 0.37)));
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}
inline double residual_size(const Rational& x) { return std::abs(x.get_d()); }
inline double residual_size(const Complex& x) { return std::abs(x); }

}  // namespace webcat
