#include <random>

#include "catch_amalgamated.hpp"
#include "webcat/congruence.hpp"
#include "webcat/fiber.hpp"
#include "webcat/trilinear.hpp"

using namespace webcat;

namespace {

const Word X1{Label::X};
const Word XX{Label::X, Label::X};
const Word XXX{Label::X, Label::X, Label::X};

template <class S>
bool relations_pass(const FiberSpec<S>& s) {
  const auto r = check_all_relations(s);
  for (const auto& x : r) INFO(x.name << " residual " << x.max_abs_residual);
  return all_pass(r);
}

template <class S>
const RelationResult& find_relation(const std::vector<RelationResult>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.name == name) return r;
  throw std::runtime_error("no relation " + name);
}

FieldElement scalar_of(const LinearMap<FieldElement>& m) {
  REQUIRE(m.rows() == 1);
  REQUIRE(m.cols() == 1);
  return m.at(0, 0);
}

std::vector<Complex> generic_samples() {
  return {std::polar(1.1, 0.7), std::polar(0.8, 2.1), Complex(1.3, 0.4), Complex(-0.6, 0.9), std::polar(1.7, -1.2)};
}

FiberSpec<FieldElement> gl2_standard() {
  return gl2_standard_triple(standard_gl2_matrix(FieldElement::v()), FieldElement::v());
}

}  // namespace

TEST_CASE("closed diagrams evaluate to the quantum numbers") {
  const FieldElement two = quantum_integer(2), three = quantum_integer(3);
  const auto sl2 = sl2_standard_spec();
  CHECK(scalar_of(evaluate(sl2, circle_diagram(Category::sl2)).map) == -two);
  const auto gl2 = gl2_standard();
  CHECK(scalar_of(evaluate(gl2, circle_diagram(Category::gl2)).map) == two);
  CHECK(scalar_of(evaluate(gl2, theta_diagram(Category::gl2)).map) == two);
  const auto so3 = sym2_standard_pair();
  CHECK(scalar_of(evaluate(so3, circle_diagram(Category::so3)).map) == three);
  CHECK(scalar_of(evaluate(so3, theta_diagram(Category::so3)).map) == -three);
  CHECK(evaluate(so3, monogon_diagram()).map.is_zero());
}

TEST_CASE("standard specs satisfy every relation exactly") {
  CHECK(relations_pass(sl2_standard_spec()));
  CHECK(relations_pass(gl2_standard()));
  CHECK(relations_pass(sym2_standard_pair()));
  const auto names = [](const std::vector<RelationResult>& rs) {
    std::vector<std::string> out;
    for (const auto& r : rs) out.push_back(r.name);
    return out;
  };
  const auto gl2 = names(check_all_relations(gl2_standard()));
  for (const char* n : {"H=I_xq", "H=I_y", "vertical=horizontal_pq", "vertical=horizontal_qp", "phantom_circle",
                        "trilinear_evaluation"})
    CHECK(std::find(gl2.begin(), gl2.end(), n) != gl2.end());
  const auto so3 = names(check_all_relations(sym2_standard_pair()));
  for (const char* n : {"H=I", "theta", "monogon_left", "monogon_right"})
    CHECK(std::find(so3.begin(), so3.end(), n) != so3.end());
}

TEST_CASE("identity bilinear form breaks the circle relation") {
  const auto s = make_spec(Category::sl2, Matrix<FieldElement>::identity(2), FieldElement::v());
  const auto r = check_all_relations(s);
  CHECK_FALSE(find_relation<FieldElement>(r, "circle").pass);
  CHECK_FALSE(check_trace_condition(s).pass);
}

TEST_CASE("numeric specializations satisfy every relation") {
  for (Complex v0 : generic_samples()) {
    CHECK(relations_pass(specialize_spec(sl2_standard_spec(), v0)));
    CHECK(relations_pass(specialize_spec(sym2_standard_pair(), v0)));
    CHECK(relations_pass(sym2_standard_pair_at(v0)));
    CHECK(relations_pass(specialize_spec(gl2_standard(), v0)));
  }
}

TEST_CASE("trace statistic") {
  const auto s = sl2_standard_spec();
  CHECK(trace_statistic(s.M, s.Minv) == -quantum_integer(2));
  const auto so3 = sym2_standard_pair();
  CHECK(trace_statistic(so3.M, so3.Minv) == quantum_integer(3));
  CHECK(check_trace_condition(gl2_standard()).pass);
  CHECK_THROWS_AS(gl2_standard_triple(Matrix<FieldElement>::identity(2), FieldElement::v()), Error);
}

TEST_CASE("evaluation is functorial") {
  const auto s = sym2_standard_pair();
  const auto top = make_diagram(Category::so3, XX, {{0, Gen::cup}, {0, Gen::tup}});
  const auto bottom = make_diagram(Category::so3, X1, {{0, Gen::tdown}, {1, Gen::cap}});
  const auto c = compose(top, bottom);
  CHECK(evaluate(s, c).map == evaluate(s, top).map * evaluate(s, bottom).map);
  const auto l = make_diagram(Category::so3, XX, {{0, Gen::cap}});
  const auto r = make_diagram(Category::so3, X1, {{0, Gen::tdown}});
  CHECK(evaluate(s, tensor(l, r)).map == kron(evaluate(s, l).map, evaluate(s, r).map));
}

TEST_CASE("sl2 crossing equals v id + v^-1 cup cap") {
  // oracle: cup∘cap (v_i ⊗ v_j) = m_ij Σ n_kl v_k ⊗ v_l
  for (Complex v0 : generic_samples()) {
    const auto s = specialize_spec(sl2_standard_spec(), v0);
    Matrix<Complex> ref = v0 * Matrix<Complex>::identity(4);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k)
          for (std::size_t l = 0; l < 2; ++l) ref(2 * k + l, 2 * i + j) += s.M(i, j) * s.Minv(k, l) / v0;
    const Matrix<Complex> got = crossing_matrix(s).to_matrix();
    CHECK((got - ref).is_zero(1e-9));
  }
}

TEST_CASE("braid relations hold numerically") {
  const auto r2 = [](Category c) { return make_diagram(c, XX, {{0, Gen::cross_neg}, {0, Gen::cross_pos}}); };
  const auto ybe_l = [](Category c) {
    return make_diagram(c, XXX, {{0, Gen::cross_pos}, {1, Gen::cross_pos}, {0, Gen::cross_pos}});
  };
  const auto ybe_r = [](Category c) {
    return make_diagram(c, XXX, {{1, Gen::cross_pos}, {0, Gen::cross_pos}, {1, Gen::cross_pos}});
  };
  for (Complex v0 : generic_samples()) {
    for (const auto& e : {sl2_standard_spec(), sym2_standard_pair()}) {
      const auto s = specialize_spec(e, v0);
      const Category c = s.category;
      CHECK(approx_equal(evaluate(s, r2(c)).map, LinearMap<Complex>::identity(s.n * s.n), 1e-9));
      CHECK(approx_equal(evaluate(s, ybe_l(c)).map, evaluate(s, ybe_r(c)).map, 1e-9));
    }
  }
}

TEST_CASE("flip test") {
  const auto at = [](Complex v0) { return specialize_spec(sl2_standard_spec(), v0); };
  CHECK(flip_test(at(1.0)));
  CHECK_FALSE(flip_test(at(Complex(0, 1))));  // q = -1
  CHECK_FALSE(flip_test(at(std::polar(1.1, 0.7))));
  for (Complex v0 : {Complex(1.0), Complex(0, 1), std::polar(1.1, 0.7)}) {
    const auto s = at(v0);
    if (flip_test(s)) {
      const auto c = crossing_matrix(s);
      CHECK(approx_equal(c * c, LinearMap<Complex>::identity(4), 1e-9));
    }
  }
}

TEST_CASE("bent maps of a gl2 triple compose to the identity") {
  const auto s = gl2_standard();
  const auto [Tl, Tu] = bent_maps(s);
  CHECK(Tu * Tl == LinearMap<FieldElement>::identity(Tl.cols()));
}

TEST_CASE("faithfulness on small hom spaces") {
  CHECK(faithfulness_check(sl2_standard_spec(), 2, 2));
  CHECK(faithfulness_check(sym2_standard_pair(), 2, 2));
  CHECK(faithfulness_check(gl2_standard(), 2, 2));
  // a degenerate spec collapses the circle: 1-dimensional target, two
  // diagrams in Hom(2, 2) become dependent
  Matrix<Complex> one(1, 1);
  one(0, 0) = 1.0;
  const auto s = make_spec(Category::sl2, one, Complex(1.0));
  CHECK_FALSE(faithfulness_check(s, 2, 2));
}

TEST_CASE("dimension cap") {
  const auto s = sl2_standard_spec();
  Word w(8, Label::X);
  const auto d = make_diagram(Category::sl2, w, {{0, Gen::cup}});
  CHECK_THROWS_AS(evaluate(s, d, 100), Error);
}

TEST_CASE("Veronese cuboid at q = 1 closes every monogon") {
  Matrix<Rational> M(3, 3);
  M(0, 0) = 1;
  M(1, 2) = 1;
  M(2, 1) = 1;
  const auto s = make_spec(Category::so3, M, Rational(1), std::optional<Tensor3<Rational>>(veronese_cuboid()));
  const auto r = check_all_relations(s);
  for (const char* n : {"monogon_left", "monogon_right", "comonogon_left", "comonogon_right"})
    CHECK(find_relation<Rational>(r, n).pass);
  // the permutation form is the q = 1 bilinear part of the standard pair
  CHECK(congruent(specialize_spec(sym2_standard_pair(), Rational(1)).M, M));
}
