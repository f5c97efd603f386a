#include <algorithm>
#include <set>

#include "catch_amalgamated.hpp"
#include "webcat/webdiag.hpp"

using namespace webcat;

namespace {

const Word X1{Label::X};
const Word XX{Label::X, Label::X};

// Brute-force oracle: all set partitions of {1..m} with blocks of size >= 2
// that are noncrossing on a circle.
long brute_planar_partitions(int m, int max_block) {
  std::vector<int> label(static_cast<std::size_t>(m), -1);
  long count = 0;
  auto crossing = [&] {
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b)
        for (int c = b + 1; c < m; ++c)
          for (int d = c + 1; d < m; ++d)
            if (label[a] == label[c] && label[b] == label[d] && label[a] != label[b]) return true;
    return false;
  };
  auto rec = [&](auto&& self, int i, int blocks) -> void {
    if (i == m) {
      std::vector<int> size(static_cast<std::size_t>(blocks), 0);
      for (int x : label) ++size[static_cast<std::size_t>(x)];
      for (int s : size)
        if (s < 2 || s > max_block) return;
      if (!crossing()) ++count;
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      label[static_cast<std::size_t>(i)] = b;
      self(self, i + 1, std::max(blocks, b + 1));
    }
  };
  rec(rec, 0, 0);
  return count;
}

}  // namespace

TEST_CASE("validate returns the codomain or names the bad layer") {
  const auto zig = make_diagram(Category::sl2, X1, {{1, Gen::cup}, {0, Gen::cap}});
  CHECK(zig.codomain == X1);
  CHECK(identity_diagram(Category::sl2, XX).codomain == XX);
  try {
    make_diagram(Category::gl2, {Label::Y, Label::X}, {{0, Gen::cap}});
    FAIL("expected a type mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == "TypeMismatch");
    CHECK(e.location() == "layers[0]");
  }
  CHECK_THROWS_AS(make_diagram(Category::sl2, XX, {{1, Gen::cap}}), Error);
  CHECK_THROWS_AS(make_diagram(Category::sl2, X1, {{0, Gen::tup}}), Error);
}

TEST_CASE("compose and tensor") {
  const auto cap = make_diagram(Category::sl2, XX, {{0, Gen::cap}});
  const auto cup = make_diagram(Category::sl2, {}, {{0, Gen::cup}});
  const auto circle = compose(cap, cup);
  CHECK(circle.domain.empty());
  CHECK(circle.codomain.empty());
  CHECK(circle.layers.size() == 2);

  const auto t = tensor(identity_diagram(Category::sl2, X1), cap);
  REQUIRE(t.layers.size() == 1);
  CHECK(t.layers[0].offset == 1);
  CHECK(t.codomain == X1);

  // interchange: (id ⊗ g)∘(f ⊗ id) and (f ⊗ id)∘(id ⊗ g) for f = g = cap
  const auto id0 = identity_diagram(Category::sl2, {});
  const auto idXX = identity_diagram(Category::sl2, XX);
  const auto a = compose(tensor(id0, cap), tensor(cap, idXX));
  const auto b = compose(tensor(cap, id0), tensor(idXX, cap));
  CHECK(a.domain == b.domain);
  CHECK(a.codomain == b.codomain);
  CHECK_THROWS_AS(compose(cap, cap), Error);
}

TEST_CASE("matching counts") {
  const std::vector<std::size_t> row{1, 0, 1, 0, 2, 0, 5};
  for (int k = 0; k <= 6; ++k) CHECK(enumerate_matchings(k, 0).size() == row[static_cast<std::size_t>(k)]);
  // Catalan recurrence C_{m+1} = Σ C_i C_{m-i}
  auto catalan = [](int m) { return enumerate_matchings(2 * m, 0).size(); };
  for (int m = 0; m < 6; ++m) {
    std::size_t sum = 0;
    for (int i = 0; i <= m; ++i) sum += catalan(i) * catalan(m - i);
    CHECK(catalan(m + 1) == sum);
  }
  CHECK(enumerate_matchings(3, 3).size() == 5);
  CHECK(enumerate_matchings(2, 1).empty());
}

TEST_CASE("planar partition counts") {
  const std::vector<std::size_t> row{1, 0, 1, 1, 3, 6, 15, 36, 91, 232, 603};
  for (int k = 0; k <= 10; ++k) CHECK(enumerate_planar_partitions(k, 0).size() == row[static_cast<std::size_t>(k)]);
  for (int m = 0; m <= 8; ++m) {
    CHECK(static_cast<long>(enumerate_planar_partitions(m, 0).size()) == brute_planar_partitions(m, m));
    CHECK(static_cast<long>(enumerate_matchings(m, 0).size()) == brute_planar_partitions(m, 2));
  }
  for (const auto& p : enumerate_planar_partitions(4, 2))
    for (const auto& b : p.blocks) CHECK(b.size() >= 2);
}

TEST_CASE("basis elements realize their blocks") {
  for (int k = 0; k <= 4; ++k)
    for (int l = 0; l <= 4; ++l) {
      for (const auto& m : enumerate_matchings(k, l)) {
        const auto d = matching_to_diagram(m);
        CHECK(d.domain.size() == static_cast<std::size_t>(k));
        CHECK(d.codomain.size() == static_cast<std::size_t>(l));
        const auto g = diagram_graph(d);
        CHECK(g.closed_loops == 0);
        for (const auto& [a, b] : m.pairs) CHECK(g.boundary_component[a - 1] == g.boundary_component[b - 1]);
      }
      for (const auto& p : enumerate_planar_partitions(k, l)) {
        const auto d = partition_to_diagram(p);
        CHECK(d.codomain.size() == static_cast<std::size_t>(l));
        const auto g = diagram_graph(d);
        CHECK_FALSE(g.has_cycle);
        std::set<int> seen;
        for (const auto& b : p.blocks) {
          const int comp = g.boundary_component[b[0] - 1];
          CHECK(seen.insert(comp).second);
          for (int x : b) CHECK(g.boundary_component[x - 1] == comp);
        }
      }
    }
  const auto cap = matching_to_diagram(enumerate_matchings(2, 0).front());
  REQUIRE(cap.layers.size() == 1);
  CHECK(cap.layers[0].gen == Gen::cap);
  const auto three = enumerate_planar_partitions(3, 0);
  REQUIRE(three.size() == 1);
  const auto tup = partition_to_diagram(three.front());
  REQUIRE(tup.layers.size() == 1);
  CHECK(tup.layers[0].gen == Gen::tup);
}

TEST_CASE("gl2 basis follows the usual-strand matchings") {
  for (int n = 0; n <= 6; ++n) {
    Word w;
    for (int i = 0; i < n; ++i) w.push_back(i % 2 == 0 ? Label::X : Label::Y);
    CHECK(gl2_basis(w, {}).size() == enumerate_matchings(n, 0).size());
  }
  CHECK(gl2_basis({Label::X, Label::Y}, {}).size() == 1);
  CHECK(gl2_basis(X1, X1).size() == 1);
  // a word of nonzero total flow has no invariants
  CHECK(gl2_basis(Word(4, Label::X), {}).empty());
}
