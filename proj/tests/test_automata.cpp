#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"

using namespace epic;
using namespace epic::automata;

namespace {

Word w(const char* t) { return parse_word(t); }
const Letter a("a"), b("b"), ai("a^-1");

std::vector<Word> sorted(std::vector<Word> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("accepts") {
  Nfa plus = letter_plus(a);
  CHECK(accepts(plus, w("a a a")));
  CHECK_FALSE(accepts(plus, {}));

  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    Nfa r = oracle::random_nfa(rng, {a, b}, 4);
    for (const auto& x : oracle::all_words({a, b}, 6)) CHECK(accepts(r, x) == oracle::accepts(r, x));
  }
}

TEST_CASE("enumerate lists accepted words in length-lex order") {
  Nfa z = union_of(letter_plus(a), letter_plus(ai));
  CHECK(enumerate(z, 2) == std::vector<Word>{w("a"), w("a^-1"), w("a a"), w("a^-1 a^-1")});
  CHECK(enumerate(empty_language({a, b}), 5).empty());

  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    Nfa r = oracle::random_nfa(rng, {a, b});
    CHECK(enumerate(r, 6) == oracle::accepted_words(r, 6));
  }
}

TEST_CASE("AcceptedWords ends on finite languages and restarts") {
  AcceptedWords it(from_words({a, b}, {w("b"), w("a b"), {}}));
  CHECK(it.next() == Word{});
  CHECK(it.next() == w("b"));
  CHECK(it.next() == w("a b"));
  CHECK_FALSE(it.next());
  it.restart();
  CHECK(it.next() == Word{});
}

TEST_CASE("union") {
  Nfa u = union_of(from_words({a}, {w("a")}), from_words({b}, {w("b")}));
  CHECK(sorted(enumerate(u, 4)) == sorted({w("a"), w("b")}));
  Nfa l = letter_plus(a);
  CHECK(enumerate(union_of(l, empty_language({a})), 6) == enumerate(l, 6));
}

TEST_CASE("concat") {
  CHECK(enumerate(concat(from_words({a}, {w("a")}), from_words({b}, {w("b")})), 4) == std::vector<Word>{w("a b")});
  Nfa l = letter_plus(a);
  CHECK(enumerate(concat(l, from_words({}, {Word{}})), 6) == enumerate(l, 6));
}

TEST_CASE("intersect") {
  // (aa)+ by hand
  Nfa aa({a});
  auto s0 = aa.add_state(), s1 = aa.add_state(), s2 = aa.add_state();
  aa.set_initial(s0);
  aa.set_accepting(s2);
  aa.add_transition(s0, a, s1);
  aa.add_transition(s1, a, s2);
  aa.add_transition(s2, a, s1);
  CHECK(enumerate(intersect(letter_plus(a), aa), 6) == std::vector<Word>{w("a a"), w("a a a a"), w("a a a a a a")});
  CHECK(is_empty(intersect(letter_plus(a), empty_language({a}))));
}

TEST_CASE("image_hom") {
  Nfa l = from_words({a}, {w("a"), w("a a")});
  CHECK(enumerate(image_hom(l, {{a, w("b b")}}, false), 6) == std::vector<Word>{w("b b"), w("b b b b")});
  CHECK(enumerate(image_hom(l, {{a, w("a")}}, false), 6) == enumerate(l, 6));

  Letter x("x"), hash("#");
  Nfa m = from_words({x, hash}, {w("x #"), w("# x #")});
  CHECK(enumerate(image_hom(m, {{x, w("x")}, {hash, {}}}, true), 6) == std::vector<Word>{w("x")});
  CHECK_THROWS_AS(image_hom(m, {{x, w("x")}, {hash, {}}}, false), Error);
}

TEST_CASE("inverse_letter_hom") {
  Letter e1("e1"), e2("e2");
  Nfa l = from_words({a}, {w("a")});
  CHECK(enumerate(inverse_letter_hom(l, {{e1, a}, {e2, a}}, {e1, e2}), 3) == std::vector<Word>{w("e1"), w("e2")});

  Nfa plus = letter_plus(a);
  CHECK(enumerate(inverse_letter_hom(plus, {{b, a}}, {b}), 3) == std::vector<Word>{w("b"), w("b b"), w("b b b")});
}

TEST_CASE("subtract_word") {
  Nfa l = from_words({a}, {{}, w("a")});
  CHECK(enumerate(subtract_word(l, {}), 3) == std::vector<Word>{w("a")});
  Nfa plus = letter_plus(a);
  CHECK(enumerate(subtract_word(plus, w("b")), 5) == enumerate(plus, 5));

  std::mt19937 rng(3);
  for (int i = 0; i < 40; ++i) {
    Nfa r = oracle::random_nfa(rng, {a, b});
    Word gone = oracle::all_words({a, b}, 3)[static_cast<std::size_t>(i) % 15];
    Nfa s = subtract_word(r, gone);
    for (const auto& x : oracle::all_words({a, b}, 5)) CHECK(accepts(s, x) == (x != gone && oracle::accepts(r, x)));
  }
}

TEST_CASE("normalize_no_accepting_initial") {
  Nfa plus = letter_plus(a);
  Nfa n = normalize_no_accepting_initial(plus);
  CHECK(enumerate(n, 6) == enumerate(plus, 6));

  Nfa loop({a});
  auto s = loop.add_state(), t = loop.add_state();
  loop.set_initial(s);
  loop.set_accepting(t);
  loop.add_epsilon(s, s);
  loop.add_transition(s, a, t);
  Nfa m = normalize_no_accepting_initial(loop);
  CHECK_FALSE(m.has_epsilon_transitions());
  CHECK(enumerate(m, 4) == std::vector<Word>{w("a")});
  CHECK_THROWS_AS(normalize_no_accepting_initial(from_words({a}, {{}})), Error);

  std::mt19937 rng(5);
  for (int i = 0; i < 60; ++i) {
    Nfa r = subtract_word(oracle::random_nfa(rng, {a, b}), {});
    Nfa q = normalize_no_accepting_initial(r);
    auto init = q.initial_states();
    REQUIRE(init.size() == 1);
    CHECK_FALSE(q.is_accepting(init[0]));
    for (const auto& tr : q.transitions()) CHECK(tr.to != init[0]);
    CHECK(enumerate(q, 6) == oracle::accepted_words(r, 6));
  }
}

TEST_CASE("is_empty agrees with enumeration up to the state count") {
  Nfa none({a});
  none.set_initial(none.add_state());
  CHECK(is_empty(none));
  CHECK_FALSE(is_empty(letter_plus(a)));
  std::mt19937 rng(9);
  for (int i = 0; i < 100; ++i) {
    Nfa r = oracle::random_nfa(rng, {a, b});
    CHECK(is_empty(r) == oracle::accepted_words(r, r.state_count()).empty());
  }
}

TEST_CASE("trim keeps the language") {
  std::mt19937 rng(13);
  for (int i = 0; i < 50; ++i) {
    Nfa r = oracle::random_nfa(rng, {a, b});
    Nfa t = trim(r);
    CHECK(t.state_count() <= r.state_count());
    CHECK(enumerate(t, 5) == enumerate(r, 5));
  }
}

TEST_CASE("duplicate letters are an alphabet collision") {
  CHECK_THROWS_AS(Nfa(std::vector<Letter>{a, a}), Error);
}

TEST_CASE("state cap") {
  std::size_t old = max_states();
  set_max_states(3);
  Nfa n({a});
  n.add_state();
  n.add_state();
  n.add_state();
  CHECK_THROWS_AS(n.add_state(), LimitExceeded);
  set_max_states(old);
}
