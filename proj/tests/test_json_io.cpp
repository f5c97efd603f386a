#include <random>

#include "catch_amalgamated.hpp"
#include "webcat/json_io.hpp"

using namespace webcat;
using namespace webcat::json_io;

TEST_CASE("field elements round-trip through both encodings") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-5, 5), e(-4, 4);
  for (int i = 0; i < 40; ++i) {
    const FieldElement x(LaurentPoly::from_terms({{e(rng), c(rng)}, {e(rng), c(rng)}}),
                         LaurentPoly::from_terms({{e(rng), 1}, {0, 2}}));
    CHECK(field_from_json(field_to_json(x)) == x);
    CHECK(field_from_json(json(to_string(x))) == x);
  }
  CHECK_THROWS_AS(field_from_json(json(3.5)), Error);
}

TEST_CASE("diagrams round-trip and report bad layers") {
  const auto d = make_diagram(Category::so3, {Label::X, Label::X}, {{0, Gen::cup}, {0, Gen::tup}});
  const auto back = diagram_from_json(diagram_to_json(d));
  CHECK(back.domain == d.domain);
  CHECK(back.codomain == d.codomain);
  REQUIRE(back.layers.size() == d.layers.size());
  for (std::size_t i = 0; i < d.layers.size(); ++i) {
    CHECK(back.layers[i].offset == d.layers[i].offset);
    CHECK(back.layers[i].gen == d.layers[i].gen);
  }
  json bad = diagram_to_json(d);
  bad["codomain"] = json::array({"X", "X"});
  CHECK_THROWS_AS(diagram_from_json(bad), Error);
  json worse = diagram_to_json(d);
  worse["layers"][1]["offset"] = 7;
  try {
    diagram_from_json(worse);
    FAIL("expected a failure");
  } catch (const Error& e) {
    CHECK(e.location() == "layers[1]");
  }
}

TEST_CASE("specs round-trip") {
  const auto s = sym2_standard_pair();
  const auto j = spec_to_json(s);
  CHECK(j.at("mode") == "exact");
  const auto back = spec_from_json<FieldElement>(j, FieldElement::v(), kDefaultEps);
  CHECK(back.M == s.M);
  REQUIRE(back.T);
  CHECK(*back.T == *s.T);
  CHECK(back.vertex_pair_scale == s.vertex_pair_scale);

  const Complex v0 = std::polar(1.2, 0.3);
  const auto n = specialize_spec(sl2_standard_spec(), v0);
  const auto nj = spec_to_json(n);
  CHECK(spec_mode(nj) == Mode::numeric);
  const Complex v1 = spec_v(nj);
  CHECK(std::abs(v1 - v0) < 1e-12);
  const auto nb = spec_from_json<Complex>(nj, v1, kDefaultEps);
  CHECK((nb.M - n.M).is_zero(1e-12));

  json q = {{"category", "sl2"}, {"mode", "numeric"}, {"q", "4"}, {"M", {{"0", "1"}, {"-4", "0"}}}};
  CHECK(std::abs(spec_v(q) - Complex(2.0)) < 1e-12);
  q["n"] = 3;
  CHECK_THROWS_AS(spec_from_json<Complex>(q, Complex(2.0), kDefaultEps), Error);
}

TEST_CASE("linear maps, forms and invariants round-trip") {
  LinearMap<FieldElement> m(2, 3);
  m.set(0, 2, quantum_integer(3));
  m.set(1, 0, FieldElement(-1));
  CHECK(linear_map_from_json(linear_map_to_json(m), FieldElement::v()) == m);

  CanonicalForm f;
  f.blocks = {gamma_block(2), h_block(1, BlockLambda::exact(-FieldElement::q())),
              h_block(2, BlockLambda::pair(FieldElement(3))), h_block(1, BlockLambda::numeric({0.5, 2}))};
  const auto fj = form_to_json(f);
  CHECK(fj.at("blocks").size() == 4);
  CHECK(same_form(form_from_json(fj), f, 1e-12));

  TrilinearInvariants inv;
  inv.counts = {PointCount(3), std::nullopt, PointCount(0)};
  inv.types[0].tag = 4;
  inv.types[1].tag = 9;
  inv.types[1].j = Rational(1728);
  inv.types[2].tag = 10;
  const auto ij = invariants_to_json(inv);
  CHECK(ij.at("counts")[1] == "inf");
  const auto ib = invariants_from_json(ij);
  CHECK(ib.counts == inv.counts);
  CHECK(ib.types[1].j == inv.types[1].j);
  CHECK(ib.types[0].tag == 4);
  CHECK_FALSE(invariants_to_json(invariants(diagonal_tensor())).contains("j"));
}

TEST_CASE("tensors round-trip, bare or under T") {
  const auto t = veronese_cuboid();
  const auto j = tensor_to_json(t);
  CHECK(rational_tensor_from_json(j) == t);
  CHECK(rational_tensor_from_json(json{{"T", j}}) == t);
  json bad = j;
  bad["entries"][0] = json::array({0, 1});
  CHECK_THROWS_AS(rational_tensor_from_json(bad), Error);
}

TEST_CASE("complex scalars accept literals and v-expressions") {
  const Complex v0(0.0, 1.0);
  CHECK(scalar_from_json<Complex>(json("1-2i"), v0, "") == Complex(1, -2));
  CHECK(std::abs(scalar_from_json<Complex>(json("v^2 + 1"), v0, "")) < 1e-12);
  CHECK(scalar_from_json<Rational>(json("3/4"), Rational(1), "") == Rational(3, 4));
}
