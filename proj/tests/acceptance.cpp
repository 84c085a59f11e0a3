// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "epic/constructions.hpp"
#include "epic/wordproblem.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace epic;
using namespace fixture;
namespace au = epic::automata;
namespace cons = epic::constructions;

namespace {

struct Failure {
  std::string why;
};

void expect(bool ok, const std::string& why) {
  if (!ok) throw Failure{why};
}

std::string keys_of(const std::vector<groups::ElementKey>& ks) {
  std::string s;
  for (const auto& k : ks) s += (s.empty() ? "" : " ") + k.bytes();
  return s;
}

void expect_clean(const demo::Demonstration& d, std::size_t no_id_len, std::size_t radius, std::size_t search_len,
                  const std::string& what) {
  auto bad = demo::verify_no_identity(d, no_id_len);
  expect(bad.empty(), what + ": identity word " + (bad.empty() ? "" : to_string(bad.front())));
  auto r = demo::verify_coverage(d, radius, search_len);
  expect(r.identity_violations.empty(), what + ": identity word during coverage search");
  expect(r.missing.empty(), what + ": missing " + keys_of(r.missing));
}

// 1
void z_demo() {
  auto d = demo::z_demo();
  expect(demo::verify_no_identity(d, 12).empty(), "identity word accepted");
  auto r = demo::verify_coverage(d, 12, 12);
  expect(r.missing.empty(), "missing " + keys_of(r.missing));
  // the ball of radius 12 in Z has 24 non-identity elements
  expect(r.covered.size() == 24, "covered " + std::to_string(r.covered.size()) + " keys, expected 24");
}

// 2
void s3_demo() {
  auto d = demo::finite_demo(s3_all());
  expect(demo::verify_no_identity(d, 4).empty(), "identity word accepted");
  auto r = demo::verify_coverage(d, 3, 1);
  expect(r.missing.empty() && r.covered.size() == 5, "expected all 5 non-identity elements covered");
  expect(r.identity_violations.empty(), "identity violations");
}

// 3
void automata_ops() {
  std::mt19937 rng(20240917);
  const std::vector<Letter> ab{Letter("a"), Letter("b")};
  const std::vector<Letter> bc{Letter("b"), Letter("c")};
  const std::vector<Letter> xy{Letter("x"), Letter("y")};
  std::size_t mismatches = 0;
  std::string first;
  auto check = [&](bool got, bool want, const std::string& op, const Word& w) {
    if (got == want) return;
    if (!mismatches++) first = op + " on '" + to_string(w) + "'";
  };
  for (int pair = 0; pair < 200; ++pair) {
    au::Nfa a = oracle::random_nfa(rng, ab);
    au::Nfa b = oracle::random_nfa(rng, pair % 2 ? ab : bc);
    au::Nfa u = au::union_of(a, b), c = au::concat(a, b), i = au::intersect(a, b);
    for (const auto& w : oracle::all_words({Letter("a"), Letter("b"), Letter("c")}, 5)) {
      const bool in_a = oracle::accepts(a, w), in_b = oracle::accepts(b, w);
      check(au::accepts(u, w), in_a || in_b, "union", w);
      check(au::accepts(i, w), in_a && in_b, "intersect", w);
      bool split = false;
      for (std::size_t k = 0; k <= w.size() && !split; ++k)
        split = oracle::accepts(a, Word(w.begin(), w.begin() + k)) && oracle::accepts(b, Word(w.begin() + k, w.end()));
      check(au::accepts(c, w), split, "concat", w);
    }
    // non-erasing homomorphism a -> x | x y, b -> y x
    std::uniform_int_distribution<int> pick(0, 2);
    const Word imgs[] = {w("x"), w("x y"), w("y x")};
    au::LetterMap phi{{Letter("a"), imgs[pick(rng)]}, {Letter("b"), imgs[pick(rng)]}};
    au::Nfa h = au::image_hom(a, phi, false);
    const auto sources = oracle::all_words(ab, 5);
    for (const auto& w : oracle::all_words(xy, 5)) {
      bool want = false;
      for (const auto& s : sources)
        if (oracle::apply(phi, s) == w && oracle::accepts(a, s)) want = true;
      check(au::accepts(h, w), want, "image_hom", w);
    }
    // inverse letter homomorphism from {x, y, z} onto {a, b}
    au::LetterRelabel rel{{Letter("x"), Letter(pick(rng) ? "a" : "b")},
                          {Letter("y"), Letter(pick(rng) ? "b" : "a")},
                          {Letter("z"), Letter("a")}};
    const std::vector<Letter> dom{Letter("x"), Letter("y"), Letter("z")};
    au::Nfa inv = au::inverse_letter_hom(a, rel, dom);
    for (const auto& w : oracle::all_words(dom, 5)) {
      Word img;
      for (const auto& x : w) img.push_back(rel.at(x));
      check(au::accepts(inv, w), oracle::accepts(a, img), "inverse_letter_hom", w);
    }
  }
  expect(mismatches == 0, std::to_string(mismatches) + " mismatches, first: " + first);
}

// 4
void heisenberg_extension() {
  auto e = heisenberg();
  auto dN = zk_named({"z"});
  auto dQ = zk_named({"x", "y"});
  // exact centre test: the off-diagonal entries next to the diagonal vanish
  auto in_n = [e](const Word& v) {
    auto m = e->matrix_of(v);
    return m.at(0, 1) == 0 && m.at(1, 2) == 0;
  };
  auto problems = cons::check_extension_inputs(dN, dQ, *e, in_n, {}, 6);
  expect(problems.empty(), problems.empty() ? "" : problems.front());
  auto d = cons::extension(dN, dQ, e, in_n);
  expect_clean(d, 8, 3, 10, "Heisenberg");
}

// 5
void dinf_overgroup() {
  auto h = dinf();
  auto in_g = [h](const Word& v) { return h->matrix_of(v).at(0, 0) == 1; };
  auto d = cons::fi_overgroup(demo::z_demo(), h, {{Letter("t"), w("s")}}, in_g);
  expect_clean(d, 10, 4, 10, "D_infinity");
}

// (w)k and (w)h agree in G for every accepted edge word of length <= 6.
void check_relabeling(const demo::Demonstration& d) {
  au::for_each_accepted(d.language(), 6, [&](const Word& e) {
    Word h;
    for (const auto& x : e) h.push_back(edge_label(x));
    expect(d.evaluate(e) == d.oracle()->evaluate(h), "relabeling differs on '" + to_string(e) + "'");
    return true;
  });
}

// 6
void fi_subgroup() {
  auto dz = cons::fi_subgroup(demo::z_demo(), even_integers());
  expect(demo::verify_no_identity(dz, 6).empty(), "2Z: identity word of length <= 6");
  auto r = demo::verify_coverage(dz, 6, 6);
  std::set<groups::ElementKey> want;
  for (long long n : {-6, -4, -2, 2, 4, 6}) want.insert(groups::FreeAbelianOracle::key_of({n}));
  std::set<groups::ElementKey> got;
  for (const auto& [k, _] : r.covered) got.insert(k);
  expect(got == want && r.missing.empty(), "2Z: covered keys are not exactly +-2, +-4, +-6");
  check_relabeling(dz);

  auto s3 = s3_all();
  auto table = cons::CosetTable::from_permutation_group(*s3, {w("r")});
  expect(table.size() == 2, "A3 should have index 2");
  auto da = cons::fi_subgroup(demo::finite_demo(s3), table);
  expect(demo::verify_no_identity(da, 6).empty(), "A3: identity word");
  auto ra = demo::verify_coverage(da, 2, 6);
  std::set<groups::ElementKey> a3{s3->evaluate(w("r")), s3->evaluate(w("r^-1"))};
  std::set<groups::ElementKey> got_a;
  for (const auto& [k, _] : ra.covered) got_a.insert(k);
  expect(got_a == a3 && ra.missing.empty(), "A3: coverage is not exactly the two 3-cycles");
  check_relabeling(da);
}

// 7
void admissible() {
  std::size_t graphs = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    for (std::size_t mask = 0; mask < (1U << pairs.size()); ++mask, ++graphs) {
      std::vector<std::string> names;
      for (std::size_t v = 0; v < n; ++v) names.push_back(std::string(1, static_cast<char>('p' + v)));
      groups::VertexGraph g(names);
      for (std::size_t e = 0; e < pairs.size(); ++e)
        if (mask >> e & 1U) g.add_edge(pairs[e].first, pairs[e].second);
      auto adm = cons::admissible_automaton(g);
      std::set<std::vector<std::size_t>> got;
      au::for_each_accepted(adm.nfa, 8, [&](const Word& s) {
        std::vector<std::size_t> t;
        for (const auto& x : s) t.push_back(g.index(x.name()));
        got.insert(t);
        return true;
      });
      auto want = oracle::pruned_types(n, [&](std::size_t u, std::size_t v) { return g.adjacent(u, v); }, 8);
      expect(got == want, "mismatch on a graph with " + std::to_string(n) + " vertices, edge mask " +
                              std::to_string(mask));
    }
  }
  expect(graphs == 1 + 2 + 8 + 64, "wrong number of graphs enumerated");
}

// 8
void graph_products() {
  groups::VertexGraph edge({"u", "v"});
  edge.add_edge("u", "v");
  groups::VertexGraph free({"u", "v"});

  auto prod = cons::graph_product(edge, {demo::finite_demo(c2("x")), demo::finite_demo(c2("y"))});
  // C2 x C2 has three non-identity elements and the language is finite
  auto words = au::enumerate(prod.language(), 12);
  expect(words.size() == 3, "C2 x C2: expected 3 accepted words, got " + std::to_string(words.size()));
  expect_clean(prod, 12, 4, 12, "C2 x C2");
  expect(demo::verify_coverage(prod, 4, 12).covered.size() == 3, "C2 x C2: expected 3 covered keys");

  auto dih = cons::graph_product(free, {demo::finite_demo(c2("x")), demo::finite_demo(c2("y"))});
  expect_clean(dih, 10, 5, 10, "C2 * C2");
  // ball of radius 5 in the infinite dihedral group has 2*5 + 1 elements
  expect(demo::verify_coverage(dih, 5, 10).covered.size() == 10, "C2 * C2: expected 10 covered keys");

  auto z2 = cons::graph_product(edge, {demo::z_demo("a"), demo::z_demo("b")});
  expect_clean(z2, 8, 4, 8, "Z x Z");
  // |{v in Z^2 : |v|_1 <= 4}| = 2*4*4 + 2*4 + 1 = 41
  expect(demo::verify_coverage(z2, 4, 8).covered.size() == 40, "Z x Z: expected 40 covered keys");
}

// 9
void autostackable() {
  using cons::triple_letter;
  std::optional<Letter> pad;
  Letter a("a"), ai("a^-1");
  const std::vector<Letter> alphabet{triple_letter(pad, a, a), triple_letter(a, a, a), triple_letter(a, pad, pad),
                                     triple_letter(ai, a, a), triple_letter(ai, pad, pad)};
  au::Nfa t(alphabet);
  auto s0 = t.add_state("s0"), end = t.add_state("end"), A = t.add_state("A"), B = t.add_state("B");
  t.set_initial(s0);
  t.set_accepting(end);
  t.set_accepting(A);
  t.set_accepting(B);
  t.add_transition(s0, alphabet[0], end);
  t.add_transition(s0, alphabet[1], A);
  t.add_transition(A, alphabet[2], A);
  t.add_transition(s0, alphabet[3], B);
  t.add_transition(B, alphabet[4], B);
  expect(cons::satisfies_padding(t), "fixture rejected by the padding check");

  au::Nfa n = cons::autostackable_projection(t);
  std::vector<Word> want{Word{}};
  for (std::size_t k = 1; k <= 10; ++k) {
    want.push_back(Word(k, a));
    want.push_back(Word(k, ai));
  }
  std::sort(want.begin(), want.end());
  auto got = au::enumerate(n, 10);
  std::sort(got.begin(), got.end());
  expect(got == want, "projection is not {eps} u a+ u (a^-1)+ at length <= 10");

  auto d = cons::cross_section_to_demo(n, groups::FreeAbelianOracle::standard({"a"}));
  auto z = demo::z_demo();
  auto lhs = au::enumerate(d.language(), 10), rhs = au::enumerate(z.language(), 10);
  std::sort(lhs.begin(), lhs.end());
  std::sort(rhs.begin(), rhs.end());
  expect(lhs == rhs, "cross-section demonstration differs from the Z demonstration");
}

// 10
void word_problem() {
  wp::Presentation p({"a", "b"}, {w("a b a^-1 b^-1")});
  au::Nfa lang = demo::zk_demo(2).language();
  for (auto [text, kind] : {std::pair{"a b a^-1 b^-1", wp::WpVerdict::Kind::in_wp},
                            std::pair{"a b", wp::WpVerdict::Kind::not_in_wp}}) {
    wp::LanguageEnumerator f(lang);
    wp::NormalClosureEnumerator g(p);
    auto v = wp::decide_word(p, w(text), f, g, 1000000);
    expect(v.kind == kind, std::string("'") + text + "' decided " + wp::to_string(v.kind));
    wp::LanguageEnumerator f2(lang);
    wp::NormalClosureEnumerator g2(p);
    expect(wp::replay_certificate(p, w(text), v, f2, g2), std::string("certificate for '") + text + "' does not replay");
  }
}

// 11
void change_generators() {
  // Z re-expressed over y = a^2 and v = a^-3
  auto z = demo::z_demo();
  std::vector<Letter> ys{Letter("y"), Letter("v")};
  au::LetterMap eval{{Letter("y"), w("a a")}, {Letter("v"), w("a^-1 a^-1 a^-1")}};
  au::LetterMap phi{{Letter("a"), w("y y v")}, {Letter("a^-1"), w("v y")}};
  auto dz = cons::change_generators(z, ys, eval, phi);
  expect_clean(dz, 36, 12, 36, "re-expressed Z");
  // containment of evaluation images: every new word's element is hit by the old demo
  auto old = demo::verify_coverage(z, 60, 60);
  au::for_each_accepted(dz.language(), 18, [&](const Word& x) {
    expect(old.covered.count(dz.evaluate(x)) == 1, "image of '" + to_string(x) + "' not in the old image");
    return true;
  });

  // plain relabeling
  auto relabeled = cons::change_generators(z, {Letter("p"), Letter("m")}, {{Letter("p"), w("a")}, {Letter("m"), w("a^-1")}},
                                           {{Letter("a"), w("p")}, {Letter("a^-1"), w("m")}});
  expect_clean(relabeled, 12, 12, 12, "relabeled Z");

  // S3 over a transposition and a 3-cycle, images found by search
  auto s3 = demo::finite_demo(s3_all());
  std::vector<Letter> st{Letter("s"), Letter("r")};
  auto images = cons::find_generator_images(s3, st, {}, 3);
  auto ds = cons::change_generators(s3, st, {}, images);
  std::size_t longest = 0;
  for (const auto& [x, img] : images) longest = std::max(longest, img.size());
  expect_clean(ds, 3 * longest, 3, longest, "S3 over s, r");
  expect(demo::verify_coverage(ds, 3, longest).covered.size() == 5, "S3 over s, r: expected 5 covered keys");
}

struct Criterion {
  int number;
  const char* title;
  double limit_seconds;
  std::function<void()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Z demonstration: no identity to length 12, full coverage of the radius 12 ball", 1, z_demo},
      {2, "S3 length-one demonstration: total coverage, no identity words", 1, s3_demo},
      {3, "automata operations agree with brute force on 200 random pairs", 60, automata_ops},
      {4, "extension: Heisenberg group from centre Z and quotient Z^2", 60, heisenberg_extension},
      {5, "finite index overgroup: infinite dihedral group from Z", 30, dinf_overgroup},
      {6, "finite index subgroup: 2Z in Z, A3 in S3, relabeling identity", 30, fi_subgroup},
      {7, "admissible automaton matches shuffle-class search on all graphs up to 4 vertices", 300, admissible},
      {8, "graph products: C2 x C2, C2 * C2, Z x Z", 120, graph_products},
      {9, "autostackable projection and cross section for Z", 5, autostackable},
      {10, "word problem of <a, b | [a, b]> decided with replayable certificates", 300, word_problem},
      {11, "generating-set change for Z and S3", 10, change_generators},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string why;
    try {
      c.body();
    } catch (const Failure& f) {
      why = f.why;
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (why.empty() && secs > c.limit_seconds)
      why = "took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_seconds) + " s";
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(3);
    line << (why.empty() ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title << " (" << secs << " s)";
    if (!why.empty()) line << " -- " << why;
    std::cout << line.str() << std::endl;
    if (!why.empty()) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
