#include "epic/demonstrations.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace epic::demo {

using automata::Nfa;
using automata::StateId;

Demonstration::Demonstration(OraclePtr oracle, automata::LetterMap eval_map, automata::Nfa language)
    : oracle_(std::move(oracle)), eval_map_(std::move(eval_map)), language_(std::move(language)) {
  if (!oracle_) throw Error("demonstration needs a group oracle");
  for (const auto& x : language_.alphabet())
    if (!eval_map_.count(x)) throw Error("no evaluation given for language letter '" + x.name() + "'");
  for (const auto& [x, w] : eval_map_) {
    if (!language_.letter_index(x)) throw Error("evaluated letter '" + x.name() + "' is not in the language alphabet");
    for (const auto& y : w)
      if (!oracle_->has_letter(y))
        throw Error("evaluation of '" + x.name() + "' uses '" + y.name() + "', which is not a group generator");
  }
}

Demonstration Demonstration::identity_mapped(OraclePtr oracle, automata::Nfa language) {
  automata::LetterMap m;
  for (const auto& x : language.alphabet()) m[x] = Word{x};
  return Demonstration(std::move(oracle), std::move(m), std::move(language));
}

bool Demonstration::has_identity_eval_map() const {
  return std::all_of(eval_map_.begin(), eval_map_.end(),
                     [](const auto& kv) { return kv.second.size() == 1 && kv.second.front() == kv.first; });
}

Word Demonstration::to_oracle_word(const Word& w) const {
  Word out;
  for (const auto& x : w) {
    auto it = eval_map_.find(x);
    if (it == eval_map_.end()) throw Error("letter '" + x.name() + "' has no evaluation");
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

std::vector<Word> verify_no_identity(const Demonstration& d, std::size_t max_len) {
  std::vector<Word> bad;
  const ElementKey id = d.oracle()->identity_key();
  automata::for_each_accepted(d.language(), max_len, [&](const Word& w) {
    if (d.evaluate(w) == id) bad.push_back(w);
    return true;
  });
  return bad;
}

CoverageReport verify_coverage(const Demonstration& d, std::size_t radius, std::size_t search_len) {
  CoverageReport report;
  report.radius = radius;
  report.search_len = search_len;
  const ElementKey id = d.oracle()->identity_key();
  std::set<ElementKey> targets;
  for (const auto& [key, witness] : groups::ball(*d.oracle(), radius)) {
    if (key == id) continue;
    if (d.subgroup() && !d.subgroup()->contains(witness)) continue;
    targets.insert(key);
  }
  automata::for_each_accepted(d.language(), search_len, [&](const Word& w) {
    ElementKey k = d.evaluate(w);
    if (k == id) {
      report.identity_violations.push_back(w);
    } else if (targets.count(k)) {
      report.covered.try_emplace(k, w);
    }
    return true;
  });
  for (const auto& k : targets)
    if (!report.covered.count(k)) report.missing.push_back(k);
  return report;
}

std::string render_report(const CoverageReport& r, bool porcelain) {
  std::ostringstream out;
  if (porcelain) {
    out << "radius\t" << r.radius << '\n' << "search_len\t" << r.search_len << '\n';
    for (const auto& [k, w] : r.covered) out << "covered\t" << k.bytes() << '\t' << to_string(w) << '\n';
    for (const auto& k : r.missing) out << "missing\t" << k.bytes() << '\n';
    for (const auto& w : r.identity_violations) out << "violation\t" << to_string(w) << '\n';
    out << "summary\t" << r.covered.size() << '\t' << r.missing.size() << '\t' << r.identity_violations.size()
        << '\n';
    return out.str();
  }
  out << "radius: " << r.radius << '\n';
  out << "search length: " << r.search_len << '\n';
  out << "covered: " << r.covered.size() << '\n';
  for (const auto& [k, w] : r.covered) out << "  " << k.bytes() << " <- " << to_string(w) << '\n';
  out << "missing keys:\n";
  for (const auto& k : r.missing) out << "  " << k.bytes() << '\n';
  out << "violating words:\n";
  for (const auto& w : r.identity_violations) out << "  " << to_string(w) << '\n';
  out << "identity violations: " << r.identity_violations.size() << ", missing: " << r.missing.size() << '\n';
  return out.str();
}

std::vector<std::string> builtin_generator_names(std::size_t rank) { return groups::FreeGroupOracle::default_names(rank); }

Demonstration finite_demo(std::shared_ptr<const groups::PermutationOracle> oracle) {
  for (const auto& x : oracle->alphabet())
    if (oracle->is_identity({x}))
      throw Error("finite demonstration letter '" + x.name() + "' evaluates to the identity");
  // every element must already be a letter, so the radius one ball is closed
  if (groups::ball(*oracle, 2).size() != groups::ball(*oracle, 1).size())
    throw Error("finite demonstration needs one letter per non-identity element");
  return Demonstration::identity_mapped(oracle, automata::single_letters(oracle->alphabet()));
}

Demonstration z_demo(const std::string& generator) {
  Letter a(generator);
  auto oracle = groups::FreeAbelianOracle::standard({generator});
  Nfa lang = automata::union_of(automata::letter_plus(a), automata::letter_plus(formal_inverse(a)));
  return Demonstration::identity_mapped(oracle, std::move(lang));
}

Nfa reduced_words_automaton(const std::vector<std::string>& generators) {
  std::vector<Letter> letters;
  for (const auto& g : generators) {
    letters.emplace_back(g);
    letters.push_back(formal_inverse(Letter(g)));
  }
  Nfa a(letters);
  StateId start = a.add_state();
  a.set_initial(start);
  std::vector<StateId> last;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    last.push_back(a.add_state());
    a.set_accepting(last.back());
  }
  for (std::size_t x = 0; x < letters.size(); ++x) {
    a.add_transition(start, static_cast<int>(x), last[x]);
    for (std::size_t y = 0; y < letters.size(); ++y)
      if ((x ^ 1U) != y) a.add_transition(last[x], static_cast<int>(y), last[y]);
  }
  return a;
}

Nfa sorted_blocks_automaton(const std::vector<std::string>& generators) {
  std::vector<Letter> letters;
  for (const auto& g : generators) {
    letters.emplace_back(g);
    letters.push_back(formal_inverse(Letter(g)));
  }
  Nfa a(letters);
  StateId start = a.add_state();
  a.set_initial(start);
  // block[2i] reads positive powers of generator i, block[2i+1] negative ones
  std::vector<StateId> block;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    block.push_back(a.add_state());
    a.set_accepting(block.back());
  }
  for (std::size_t x = 0; x < letters.size(); ++x) {
    a.add_transition(start, static_cast<int>(x), block[x]);
    a.add_transition(block[x], static_cast<int>(x), block[x]);
    for (std::size_t y = 0; y < letters.size(); ++y)
      if (y / 2 > x / 2) a.add_transition(block[x], static_cast<int>(y), block[y]);
  }
  return a;
}

Demonstration free_demo(std::size_t rank) {
  auto names = builtin_generator_names(rank);
  auto oracle = std::make_shared<groups::FreeGroupOracle>(names);
  return Demonstration::identity_mapped(oracle, reduced_words_automaton(names));
}

Demonstration zk_demo(std::size_t rank) {
  auto names = builtin_generator_names(rank);
  return Demonstration::identity_mapped(groups::FreeAbelianOracle::standard(names), sorted_blocks_automaton(names));
}

}  // namespace epic::demo
