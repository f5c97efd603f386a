#include <random>

#include "catch_amalgamated.hpp"
#include "webcat/qscalar.hpp"

using namespace webcat;

namespace {

// Independent oracle: [k] at a rational v0 as the geometric sum
// q^{k-1} + q^{k-3} + ... + q^{1-k}, q = v0^2.
Rational quantum_oracle(int k, const Rational& v0) {
  const Rational q = v0 * v0;
  if (k == 0) return 0;
  if (k < 0) return -quantum_oracle(-k, v0);
  Rational sum = 0;
  for (int e = k - 1; e >= 1 - k; e -= 2) {
    Rational term = 1;
    for (int i = 0; i < (e < 0 ? -e : e); ++i) term *= q;
    sum += e < 0 ? Rational(1 / term) : term;
  }
  return sum;
}

FieldElement random_element(std::mt19937& rng, bool allow_fraction) {
  std::uniform_int_distribution<int> coef(-4, 4), exp(-4, 4), terms(1, 3);
  auto poly = [&] {
    LaurentPoly::Terms t;
    const int n = terms(rng);
    for (int i = 0; i < n; ++i) t[exp(rng)] += Rational(coef(rng));
    return LaurentPoly::from_terms(t);
  };
  LaurentPoly num = poly();
  if (!allow_fraction) return FieldElement(num);
  LaurentPoly den = poly();
  while (den.is_zero()) den = poly();
  return FieldElement(num, den);
}

}  // namespace

TEST_CASE("quantum integers match their defining ratio") {
  CHECK(quantum_integer(1) == FieldElement(1));
  CHECK(quantum_integer(2) == FieldElement::q() + FieldElement::q_pow(-1));
  CHECK(quantum_integer(3) == FieldElement::q_pow(2) + FieldElement(1) + FieldElement::q_pow(-2));
  CHECK(quantum_integer(-3) == -quantum_integer(3));
  for (int k = -6; k <= 9; ++k)
    for (const Rational v0 : {Rational(2), Rational(-3, 2), Rational(5, 7)})
      CHECK(quantum_integer(k).evaluate(v0) == quantum_oracle(k, v0));
}

TEST_CASE("quantum Pascal rule") {
  for (int k = 1; k <= 12; ++k)
    CHECK(quantum_integer(k) * quantum_integer(2) == quantum_integer(k + 1) + quantum_integer(k - 1));
}

TEST_CASE("field identities") {
  const FieldElement q = FieldElement::q(), qi = FieldElement::q_pow(-1);
  CHECK((q + qi) * (q - qi) == FieldElement::q_pow(2) - FieldElement::q_pow(-2));
  CHECK(quantum_integer(2) * quantum_integer(2) == quantum_integer(3) + FieldElement(1));
  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    const FieldElement x = random_element(rng, true);
    if (x.is_zero()) continue;
    CHECK(x / x == FieldElement(1));
    CHECK(x * x.inverse() == FieldElement(1));
  }
  CHECK_THROWS_AS(FieldElement(1) / FieldElement(), Error);
}

TEST_CASE("arithmetic agrees with evaluation at rational points") {
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    const FieldElement a = random_element(rng, true), b = random_element(rng, true);
    for (const Rational v0 : {Rational(3, 2), Rational(-7, 5)}) {
      Rational av, bv;
      try {
        av = a.evaluate(v0);
        bv = b.evaluate(v0);
      } catch (const Error&) {
        continue;
      }
      CHECK((a + b).evaluate(v0) == av + bv);
      CHECK((a - b).evaluate(v0) == av - bv);
      CHECK((a * b).evaluate(v0) == av * bv);
      if (bv != 0 && !b.is_zero()) CHECK((a / b).evaluate(v0) == av / bv);
    }
  }
}

TEST_CASE("canonical form is structural and stable") {
  // (v^2 - 1)/(v - 1) = v + 1
  const FieldElement x(LaurentPoly::from_terms({{2, 1}, {0, -1}}), LaurentPoly::from_terms({{1, 1}, {0, -1}}));
  CHECK(x.is_laurent());
  CHECK(x == FieldElement::v() + FieldElement(1));
  // denominator monic with lowest exponent 0
  const FieldElement y(LaurentPoly::monomial(0, 3), LaurentPoly::from_terms({{3, 2}, {1, 4}}));
  CHECK(y.den().coeff(0) != 0);
  CHECK(y.den().low() == 0);
  CHECK(FieldElement(y.num(), y.den()) == y);
}

TEST_CASE("specialization is a ring homomorphism") {
  CHECK(std::abs(specialize(quantum_integer(2), 1.0) - Complex(2.0)) < 1e-12);
  CHECK(std::abs(specialize(quantum_integer(3), 1.0) - Complex(3.0)) < 1e-12);
  const Complex w = std::polar(1.0, M_PI / 8);
  CHECK(std::abs(specialize(FieldElement::q_pow(2) + FieldElement::q_pow(-2), w)) < 1e-9);
  std::mt19937 rng(3);
  const Complex v0(0.7, 0.4);
  for (int i = 0; i < 50; ++i) {
    const FieldElement a = random_element(rng, true), b = random_element(rng, true);
    CHECK(std::abs(specialize(a * b, v0) - specialize(a, v0) * specialize(b, v0)) < 1e-8);
    CHECK(std::abs(specialize(a + b, v0) - (specialize(a, v0) + specialize(b, v0))) < 1e-8);
  }
  CHECK_THROWS_AS(specialize(FieldElement(1) / (FieldElement::v() - FieldElement(1)), 1.0), Error);
}

TEST_CASE("text form round-trips") {
  std::mt19937 rng(17);
  for (int i = 0; i < 100; ++i) {
    const FieldElement x = random_element(rng, i % 2 == 0);
    CHECK(parse_field_element(to_string(x)) == x);
  }
  CHECK(parse_field_element("1*v^2 + 1*v^-2") == quantum_integer(2));
  CHECK(to_string(-quantum_integer(3)) == "-1 - v^4 - v^-4");
  CHECK_THROWS_AS(parse_field_element("v^"), Error);
}

TEST_CASE("complex literals") {
  CHECK(parse_complex("1.5-2i") == Complex(1.5, -2));
  CHECK(parse_complex("i") == Complex(0, 1));
  CHECK(parse_complex("-3") == Complex(-3, 0));
  CHECK(format_complex({0.5, -0.25}) == "0.5-0.25i");
  CHECK_THROWS_AS(parse_complex("abc"), Error);
}
