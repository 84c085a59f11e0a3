#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "epic/automata.hpp"
#include "epic/groups.hpp"

namespace epic::demo {

using groups::ElementKey;
using groups::OraclePtr;

/// Predicate on words over the oracle alphabet, used to restrict coverage to
/// a subgroup of the oracle's group.
struct SubgroupFilter {
  std::string description;
  std::function<bool(const Word&)> contains;
};

/// A language together with the group its words evaluate into. Language
/// letters evaluate through `eval_map` to words over the oracle alphabet.
class Demonstration {
 public:
  Demonstration(OraclePtr oracle, automata::LetterMap eval_map, automata::Nfa language);
  /// Language over the oracle alphabet itself; every letter maps to itself.
  static Demonstration identity_mapped(OraclePtr oracle, automata::Nfa language);

  const OraclePtr& oracle() const noexcept { return oracle_; }
  const automata::LetterMap& eval_map() const noexcept { return eval_map_; }
  const automata::Nfa& language() const noexcept { return language_; }
  const std::optional<SubgroupFilter>& subgroup() const noexcept { return subgroup_; }
  void set_subgroup(SubgroupFilter filter) { subgroup_ = std::move(filter); }
  bool has_identity_eval_map() const;

  /// Oracle word described by a language word.
  Word to_oracle_word(const Word& w) const;
  ElementKey evaluate(const Word& w) const { return oracle_->evaluate(to_oracle_word(w)); }

 private:
  OraclePtr oracle_;
  automata::LetterMap eval_map_;
  automata::Nfa language_;
  std::optional<SubgroupFilter> subgroup_;
};

struct CoverageReport {
  std::size_t radius = 0;
  std::size_t search_len = 0;
  std::map<ElementKey, Word> covered;
  std::vector<ElementKey> missing;  // sorted
  std::vector<Word> identity_violations;

  bool complete() const { return missing.empty(); }
  bool passed() const { return missing.empty() && identity_violations.empty(); }
};

/// Accepted words of length <= max_len that evaluate to the identity, in
/// length-lex order.
std::vector<Word> verify_no_identity(const Demonstration& d, std::size_t max_len);

/// For every non-identity element of the ball (restricted to the subgroup
/// filter when one is set), the length-lex first accepted word of length
/// <= search_len that represents it. Identity violations met during the
/// search are recorded as well.
CoverageReport verify_coverage(const Demonstration& d, std::size_t radius, std::size_t search_len);

/// Renders a report with entries sorted by key.
std::string render_report(const CoverageReport& r, bool porcelain = false);

enum class BuiltinKind { finite, z, free, zk };

/// Letter names a, b, c, ... used by the builtin free and zk demonstrations.
std::vector<std::string> builtin_generator_names(std::size_t rank);

/// One-letter words over the alphabet of a permutation oracle; every letter
/// must be a non-identity element, and every non-identity element a letter.
Demonstration finite_demo(std::shared_ptr<const groups::PermutationOracle> oracle);
/// a+ u (a^-1)+ over the symmetric generators of Z.
Demonstration z_demo(const std::string& generator = "a");
/// Non-empty freely reduced words.
Demonstration free_demo(std::size_t rank);
/// Sign-consistent blocks x1^(+-n1) ... xk^(+-nk) with at least one block.
Demonstration zk_demo(std::size_t rank);

/// Automaton of non-empty freely reduced words over paired generators.
automata::Nfa reduced_words_automaton(const std::vector<std::string>& generators);
/// Automaton of sign-consistent blocks, eps removed.
automata::Nfa sorted_blocks_automaton(const std::vector<std::string>& generators);

}  // namespace epic::demo
