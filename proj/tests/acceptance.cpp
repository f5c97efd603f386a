// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "fp_oracle.hpp"
#include "webcat/congruence.hpp"
#include "webcat/fiber.hpp"
#include "webcat/solutions.hpp"
#include "webcat/trilinear.hpp"

using namespace webcat;

namespace {

// Pinned tolerances.
constexpr double kNumericEps = 1e-9;
constexpr int kCongruenceTrials = 100;
constexpr int kTraceTrials = 50;
constexpr int kOracleTensors = 10;
constexpr long kOraclePrime = 101;

using RMat = Matrix<Rational>;

struct Check {
  std::ostringstream failures;
  bool ok = true;
  void operator()(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) failures << "; ";
      failures << what;
      ok = false;
    }
  }
};

std::vector<Complex> generic_vs() {
  return {std::polar(1.1, 0.7), std::polar(0.8, 2.1), Complex(1.3, 0.4), Complex(-0.6, 0.9), std::polar(1.7, -1.2)};
}

FieldElement scalar(const LinearMap<FieldElement>& m) { return m.rows() == 1 && m.cols() == 1 ? m.at(0, 0) : FieldElement(); }

RMat random_invertible(std::mt19937& rng, std::size_t n, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  for (;;) {
    RMat P(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) P(i, j) = d(rng);
    if (P.determinant() != 0) return P;
  }
}

Matrix<Complex> to_complex(const RMat& m) {
  return m.map([](const Rational& x) { return Complex(x.get_d()); });
}

bool has_relation(const std::vector<RelationResult>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.name == name) return r.pass;
  return false;
}

// ------------------------------------------------------------ criteria

void closed_values(Check& c) {
  const FieldElement two = quantum_integer(2), three = quantum_integer(3);
  const auto sl2 = sl2_standard_spec();
  c(scalar(evaluate(sl2, circle_diagram(Category::sl2)).map) == -two, "sl2 circle");
  const auto gl2 = gl2_standard_triple(standard_gl2_matrix(FieldElement::v()), FieldElement::v());
  c(scalar(evaluate(gl2, circle_diagram(Category::gl2)).map) == two, "gl2 circle");
  const auto phantom = make_diagram(Category::gl2, {}, {{0, Gen::pcup_p}, {0, Gen::pcap}});
  c(scalar(evaluate(gl2, phantom).map) == FieldElement(1), "gl2 phantom circle");
  c(scalar(evaluate(gl2, theta_diagram(Category::gl2)).map) == two, "gl2 trilinear loop");
  const auto so3 = sym2_standard_pair();
  c(scalar(evaluate(so3, circle_diagram(Category::so3)).map) == three, "so3 circle");
  c(evaluate(so3, monogon_diagram()).map.is_zero(), "so3 monogon");
  c(scalar(evaluate(so3, theta_diagram(Category::so3)).map) == -three, "so3 theta");
}

void basis_counts(Check& c) {
  const std::vector<std::size_t> tl{1, 0, 1, 0, 2, 0, 5};
  for (int n = 0; n <= 6; ++n) {
    const auto k = static_cast<std::size_t>(n);
    c(basis_diagrams(Category::sl2, n, 0).size() == tl[k], "sl2 n=" + std::to_string(n));
    Word w;
    for (int i = 0; i < n; ++i) w.push_back(i % 2 == 0 ? Label::X : Label::Y);
    c(gl2_basis(w, {}).size() == tl[k], "gl2 n=" + std::to_string(n));
  }
  const std::vector<std::size_t> riordan{1, 0, 1, 1, 3, 6, 15, 36, 91, 232, 603};
  for (int k = 0; k <= 10; ++k)
    c(basis_diagrams(Category::so3, k, 0).size() == riordan[static_cast<std::size_t>(k)], "so3 k=" + std::to_string(k));
}

void standard_pipeline(Check& c) {
  const auto S = standard_sl2_matrix(FieldElement::v());
  c(quantum_trace(S) == -quantum_integer(2), "trace of S(1)");
  for (Complex v0 : generic_vs()) {
    const Complex q0 = v0 * v0;
    CanonicalForm want{{h_block(1, BlockLambda::numeric(-q0))}};
    c(same_form(canonical_form(standard_sl2_matrix(v0), kNumericEps), want, 1e3 * kNumericEps),
      "canonical form at v=" + format_complex(v0));
  }
  c(all_pass(check_all_relations(sl2_standard_spec())), "sl2 relations");
}

void solution_lists(Check& c) {
  const FieldElement q = FieldElement::q();
  auto structures = [](const auto& e) {
    std::set<BlockStructure> s;
    for (const auto& f : e.families) s.insert(f.structure);
    return s;
  };
  const BlockStructure H{{}, {1}}, G2{{2}, {}}, G11{{1, 1}, {}}, G1H{{1}, {1}};
  const auto generic = enumerate_solutions(Category::sl2, 2, q);
  c(structures(generic) == std::set<BlockStructure>{H}, "n=2 generic");
  c(!generic.families.empty() && generic.families[0].roots &&
        std::set<std::string>{to_string(generic.families[0].roots->first), to_string(generic.families[0].roots->second)} ==
            std::set<std::string>{to_string(-q), to_string(-q.inverse())},
    "n=2 generic roots");
  c(structures(enumerate_solutions(Category::sl2, 2, Rational(1))) == std::set<BlockStructure>{H, G2}, "n=2 q=1");
  const auto minus = enumerate_solutions(Category::sl2, 2, Rational(-1));
  c(structures(minus) == std::set<BlockStructure>{G11} && minus.families[0].contains_standard, "n=2 q=-1");
  const auto three = enumerate_solutions(Category::sl2, 3, q);
  c(structures(three) == std::set<BlockStructure>{G1H}, "n=3 structures");
  if (three.families.size() == 1) {
    using E = QuadExt<FieldElement>;
    const auto& f = three.families[0];
    Matrix<E> M(3, 3);
    M(0, 0) = E(FieldElement(1));
    M(1, 2) = E(FieldElement(1));
    M(2, 1) = E::generator(f.b / f.a);
    c(quantum_trace(M) == E(-quantum_integer(2)), "n=3 quadratic by substitution");
  }
  bool parametric = false;
  for (const auto& f : enumerate_solutions(Category::sl2, 4, q).families) parametric = parametric || f.parametric;
  c(parametric, "n=4 parametric family");
}

void crossing_matrix_case(Check& c) {
  const double s5 = std::sqrt(5.0);
  const Complex x = (-3 + s5) / 2, xg = (-3 - s5) / 2, y = (-1 + s5) / 2, yg = (-1 - s5) / 2;
  Matrix<Complex> M(3, 3);
  M(0, 0) = 1;
  M(1, 2) = 1;
  M(2, 1) = x;
  const auto s = make_spec(Category::sl2, M, Complex(1.0));
  const Matrix<Complex> C = crossing_matrix(s).to_matrix();
  const Complex P[9][9] = {{2, 0, 0, 0, 0, x, 0, 1, 0},  {0, 1},        {0, 0, 1},
                           {0, 0, 0, 1},                 {0, 0, 0, 0, 1}, {1, 0, 0, 0, 0, y, 0, 1, 0},
                           {0, 0, 0, 0, 0, 0, 1},        {xg, 0, 0, 0, 0, 1, 0, yg, 0},
                           {0, 0, 0, 0, 0, 0, 0, 0, 1}};
  // backtracking search for one simultaneous row/column permutation
  std::vector<std::size_t> cur;
  std::vector<bool> used(9, false);
  std::function<bool()> search = [&]() -> bool {
    const std::size_t k = cur.size();
    if (k == 9) return true;
    for (std::size_t cand = 0; cand < 9; ++cand) {
      if (used[cand]) continue;
      cur.push_back(cand);
      bool fits = true;
      for (std::size_t a = 0; a <= k && fits; ++a)
        fits = std::abs(P[k][a] - C(cur[k], cur[a])) <= kNumericEps && std::abs(P[a][k] - C(cur[a], cur[k])) <= kNumericEps;
      if (fits) {
        used[cand] = true;
        if (search()) return true;
        used[cand] = false;
      }
      cur.pop_back();
    }
    return false;
  };
  c(search(), "permutation match");
  c(((C * C) - Matrix<Complex>::identity(9)).is_zero(kNumericEps), "crossing squares to id");
  c(!flip_test(s), "n=3 flip false");
  c(flip_test(specialize_spec(sl2_standard_spec(), Complex(1.0))), "n=2 q=1 flip true");
  c(!flip_test(specialize_spec(sl2_standard_spec(), Complex(0, 1))), "n=2 q=-1 flip false");
  c(!flip_test(specialize_spec(sl2_standard_spec(), generic_vs()[0])), "n=2 generic flip false");
}

void braid(Check& c) {
  const Word XX{Label::X, Label::X}, XXX{Label::X, Label::X, Label::X};
  for (Complex v0 : generic_vs())
    for (const auto& e : {sl2_standard_spec(), sym2_standard_pair()}) {
      const auto s = specialize_spec(e, v0);
      const auto cat = s.category;
      const auto r2 = evaluate(s, make_diagram(cat, XX, {{0, Gen::cross_neg}, {0, Gen::cross_pos}})).map;
      c(approx_equal(r2, LinearMap<Complex>::identity(s.n * s.n), kNumericEps), category_name(cat) + " R2");
      const auto l = evaluate(s, make_diagram(cat, XXX, {{0, Gen::cross_pos}, {1, Gen::cross_pos}, {0, Gen::cross_pos}}));
      const auto r = evaluate(s, make_diagram(cat, XXX, {{1, Gen::cross_pos}, {0, Gen::cross_pos}, {1, Gen::cross_pos}}));
      c(approx_equal(l.map, r.map, kNumericEps), category_name(cat) + " Yang-Baxter");
    }
}

void congruence_suite(Check& c) {
  std::mt19937 rng(2024);
  const Complex v0 = std::polar(1.2, 0.5);
  const std::vector<Matrix<Complex>> as{standard_sl2_matrix(v0), to_complex(gamma_matrix<Rational>(3)),
                                        to_complex(h_matrix<Rational>(1, Rational(3))),
                                        to_complex(direct_sum(gamma_matrix<Rational>(1), h_matrix<Rational>(1, Rational(2))))};
  for (const auto& A : as) {
    const CanonicalForm ref = canonical_form(A, kNumericEps);
    int bad = 0;
    for (int t = 0; t < kCongruenceTrials; ++t) {
      const auto P = to_complex(random_invertible(rng, A.rows(), 5));
      if (!same_form(canonical_form(Matrix<Complex>(P.transpose() * A * P), kNumericEps), ref, 1e3 * kNumericEps)) ++bad;
    }
    c(bad == 0, std::to_string(bad) + " mismatches for " + to_string(ref));
  }
  std::uniform_int_distribution<int> d(-3, 3);
  for (int t = 0; t < kTraceTrials; ++t) {
    const RMat A = random_invertible(rng, 3, 5), B = random_invertible(rng, 2, 5);
    c(quantum_trace(direct_sum(A, B)) == quantum_trace(A) + quantum_trace(B), "additivity");
    RMat K(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) {
        K(i, j) = d(rng);
        K(j, i) = -K(i, j);
      }
    const RMat I = RMat::identity(3);
    const RMat O = (I - K) * (I + K).inverse();
    c(quantum_trace(RMat(O.transpose() * A * O)) == quantum_trace(A), "orthogonal invariance");
  }
}

void so3_pair(Check& c) {
  const auto s = sym2_standard_pair();
  const auto rel = check_all_relations(s);
  c(all_pass(rel), "exact relations");
  c(has_relation(rel, "H=I"), "H=I");
  for (Complex v0 : generic_vs()) c(all_pass(check_all_relations(specialize_spec(s, v0))), "numeric relations");
  c(quantum_trace(s.M) == quantum_integer(3), "trace [3]");
  const RMat perm{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}};
  c(congruent(specialize_spec(s, Rational(1)).M, perm), "q=1 congruence");
}

void veronese(Check& c) {
  const auto inv = invariants(veronese_cuboid());
  for (std::size_t i = 0; i < 3; ++i) {
    c(inv.counts[i] == PointCount(0), "count 0");
    c(inv.types[i].tag == 10, "type 10");
  }
  const RMat perm{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}};
  const auto s = make_spec(Category::so3, perm, Rational(1), std::optional<Tensor3<Rational>>(veronese_cuboid()));
  const auto rel = check_all_relations(s);
  for (const char* n : {"monogon_left", "monogon_right", "comonogon_left", "comonogon_right"}) c(has_relation(rel, n), n);
}

void trilinear_suite(Check& c) {
  const auto d = invariants(diagonal_tensor());
  for (std::size_t i = 0; i < 3; ++i) c(d.counts[i] == PointCount(3) && d.types[i].tag == 4, "diagonal tensor");
  using poly::MPoly;
  const MPoly x = MPoly::var(0), y = MPoly::var(1), z = MPoly::var(2);
  const std::vector<std::pair<MPoly, int>> reps{
      {x * x * x, 1},         {x * x * y, 2},           {x * y * (x - y), 3},
      {x * y * z, 4},         {z * (x * x + y * z), 5}, {x * (x * x + y * z), 6},
      {x * x * x - y * y * z, 7}, {x * x * x + y * y * y - x * y * z, 8}, {MPoly(), 10}};
  for (const auto& [f, tag] : reps) c(classify_cubic(TernaryCubic{f}).tag == tag, "cubic type " + std::to_string(tag));
  std::mt19937 rng(12345);
  int tested = 0;
  while (tested < kOracleTensors) {
    const auto t = fp_oracle::random_sparse(rng);
    const auto n = rank_one_count(t, Axis::X);
    if (!n) continue;
    const long oracle = fp_oracle::brute_force_count(fp_oracle::to_int(t), kOraclePrime);
    c(oracle == *n, "oracle tensor " + std::to_string(tested) + ": " + std::to_string(*n) + " vs " + std::to_string(oracle));
    ++tested;
  }
}

void faithfulness(Check& c) {
  c(basis_diagrams(Category::sl2, 3, 3).size() == 5, "sl2 basis size");
  c(basis_diagrams(Category::so3, 3, 3).size() == 15, "so3 basis size");
  c(faithfulness_check(sl2_standard_spec(), 3, 3), "sl2 (3,3)");
  c(faithfulness_check(sym2_standard_pair(), 3, 3), "so3 (3,3)");
}

void gl2_triple(Check& c) {
  const auto s = gl2_standard_triple(standard_gl2_matrix(FieldElement::v()), FieldElement::v());
  const auto rel = check_all_relations(s);
  c(all_pass(rel), "all relations");
  for (const char* n : {"H=I_xq", "H=I_y", "vertical=horizontal_pq", "vertical=horizontal_qp"}) c(has_relation(rel, n), n);
  const auto [Tl, Tu] = bent_maps(s);
  c(Tu * Tl == LinearMap<FieldElement>::identity(Tl.cols()), "bent maps");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"closed-diagram values", closed_values},
      {"basis counts", basis_counts},
      {"standard-solution pipeline", standard_pipeline},
      {"solution lists", solution_lists},
      {"9x9 crossing matrix", crossing_matrix_case},
      {"braid relations", braid},
      {"congruence property suite", congruence_suite},
      {"so3 standard pair", so3_pair},
      {"Veronese cuboid", veronese},
      {"trilinear suite", trilinear_suite},
      {"faithfulness", faithfulness},
      {"gl2 triple", gl2_triple},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.ok ? "PASS " : "FAIL ") << (i + 1) << " " << criteria[i].first;
    if (!c.ok) std::cout << " (" << c.failures.str() << ")";
    std::cout << "\n";
    failed += c.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
