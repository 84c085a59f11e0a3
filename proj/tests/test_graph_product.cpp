#include <doctest.h>

#include "epic/graph_product.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace epic;
using namespace epic::groups;
using fixture::w;

namespace {

GraphProductOracle c2c2(bool edge) {
  VertexGraph g({"u", "v"});
  if (edge) g.add_edge("u", "v");
  return GraphProductOracle(g, {fixture::c2("a"), fixture::c2("b")});
}

}  // namespace

TEST_CASE("vertex graphs reject loops, repeats and unknown vertices") {
  VertexGraph g({"u", "v"});
  g.add_edge("u", "v");
  CHECK(g.adjacent(0, 1));
  CHECK(g.adjacent(1, 0));
  CHECK_THROWS_AS(g.add_edge("v", "u"), Error);
  CHECK_THROWS_AS(g.add_edge("u", "u"), Error);
  CHECK_THROWS_AS(g.add_edge("u", "q"), Error);
}

TEST_CASE("vertex alphabets must be disjoint") {
  VertexGraph g({"u", "v"});
  CHECK_THROWS_AS(GraphProductOracle(g, {fixture::c2("a"), fixture::c2("a")}), Error);
}

TEST_CASE("decompose") {
  VertexGraph g({"u", "v"});
  auto zu = FreeAbelianOracle::standard({"a1", "a2"});
  auto zv = FreeAbelianOracle::standard({"b1"});
  GraphProductOracle o(g, {zu, zv});
  auto d = o.decompose(w("a1 a2 b1"));
  REQUIRE(d.parts.size() == 2);
  CHECK(d.parts[0].vertex == 0);
  CHECK(d.parts[0].word == w("a1 a2"));
  CHECK(d.type() == std::vector<std::size_t>{0, 1});
  CHECK(o.decompose({}).parts.empty());
  CHECK(o.decompose(w("a1 b1 a1")).global_length() == 3);
}

TEST_CASE("pruning") {
  auto o = c2c2(true);
  auto p = o.prune(w("a b a"));
  CHECK(p.word() == w("b"));
  CHECK(p.type() == std::vector<std::size_t>{1});
  CHECK(o.prune(w("a a b b")).type().empty());

  // path u - v - t; letters x at u and z at t do not commute
  VertexGraph path({"u", "v", "t"});
  path.add_edge("u", "v");
  path.add_edge("v", "t");
  GraphProductOracle raag(path, {FreeAbelianOracle::standard({"x"}), FreeAbelianOracle::standard({"y"}),
                                 FreeAbelianOracle::standard({"z"})});
  CHECK(raag.prune(w("z x")).type() == std::vector<std::size_t>{2, 0});
  // y commutes with both, so it moves to the front
  CHECK(raag.prune(w("z x y")).type() == std::vector<std::size_t>{1, 2, 0});
  CHECK(raag.prune(w("x z x^-1")).type() == std::vector<std::size_t>{0, 2, 0});
}

TEST_CASE("identity words prune to the empty type") {
  auto o = c2c2(false);
  for (const auto& x : oracle::all_words(o.alphabet(), 8))
    if (o.is_identity(x)) CHECK(o.prune(x).type().empty());
}

TEST_CASE("keys are invariant under shuffles and local identities") {
  VertexGraph g({"u", "v"});
  g.add_edge("u", "v");
  GraphProductOracle o(g, {FreeAbelianOracle::standard({"a"}), std::make_shared<FreeGroupOracle>(std::vector<std::string>{"b"})});
  CHECK(o.evaluate(w("a b")) == o.evaluate(w("b a")));
  CHECK(o.evaluate(w("a b b^-1")) == o.evaluate(w("a")));
  CHECK(o.evaluate(w("a a^-1 b")) == o.evaluate(w("b")));
}

TEST_CASE("C2 x C2 has four elements") {
  auto o = c2c2(true);
  // Klein four group: each letter toggles one bit
  auto klein = [](const Word& x) {
    int v = 0;
    for (const auto& l : x) v ^= l.name() == "a" ? 1 : 2;
    return v;
  };
  const auto words = oracle::all_words(o.alphabet(), 6);
  std::set<ElementKey> keys;
  for (const auto& x : words) keys.insert(o.evaluate(x));
  CHECK(keys.size() == 4);
  for (std::size_t i = 0; i < words.size(); i += 3)
    for (std::size_t j = 0; j < words.size(); j += 11)
      CHECK((o.evaluate(words[i]) == o.evaluate(words[j])) == (klein(words[i]) == klein(words[j])));
  CHECK(o.is_finite());
}

TEST_CASE("C2 * C2 ball of radius 4 has 9 elements") {
  auto o = c2c2(false);
  CHECK(ball(o, 4).size() == 9);
  CHECK_FALSE(o.is_finite());
  // alternating words are pairwise distinct
  CHECK(o.evaluate(w("a b")) != o.evaluate(w("b a")));
}
