#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "epic/word.hpp"

namespace epic::automata {

using StateId = std::size_t;
/// Sorted, duplicate free list of states.
using StateSet = std::vector<StateId>;

/// Raised when a construction would exceed the configured state cap.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

/// Cap on the number of states of any automaton; read once from
/// EPIC_MAX_STATES, default 10^6.
std::size_t max_states();
void set_max_states(std::size_t cap);

/// Nondeterministic finite automaton with epsilon transitions.
///
/// Letters are interned by display string; transitions refer to letters by
/// their index in the alphabet, with kEpsilon for the empty label.
class Nfa {
 public:
  static constexpr int kEpsilon = -1;

  struct Transition {
    StateId from;
    int label;
    StateId to;
  };

  Nfa() = default;
  /// Throws if two letters share a display string.
  explicit Nfa(std::vector<Letter> alphabet);

  const std::vector<Letter>& alphabet() const noexcept { return alphabet_; }
  std::optional<int> letter_index(const Letter& x) const;
  /// Returns the index of `x`, appending it to the alphabet if new.
  int add_letter(const Letter& x);

  StateId add_state(std::string name = {});
  std::size_t state_count() const noexcept { return out_.size(); }
  /// Declared name, or "q<id>" when none was given.
  std::string state_name(StateId s) const;
  bool has_declared_name(StateId s) const { return !names_[s].empty(); }

  void add_transition(StateId from, const Letter& label, StateId to);
  void add_transition(StateId from, int label, StateId to);
  void add_epsilon(StateId from, StateId to) { add_transition(from, kEpsilon, to); }

  void set_initial(StateId s, bool on = true);
  void set_accepting(StateId s, bool on = true);
  bool is_initial(StateId s) const { return initial_[s]; }
  bool is_accepting(StateId s) const { return accepting_[s]; }
  StateSet initial_states() const;
  StateSet accepting_states() const;

  /// Outgoing (label, target) pairs of `s`.
  const std::vector<std::pair<int, StateId>>& out(StateId s) const { return out_[s]; }
  std::vector<Transition> transitions() const;
  bool has_epsilon_transitions() const;

  StateSet epsilon_closure(StateSet states) const;
  /// Epsilon-closed set reached from `states` by reading letter index `x`.
  StateSet step(const StateSet& states, int x) const;
  StateSet initial_closure() const { return epsilon_closure(initial_states()); }
  bool any_accepting(const StateSet& states) const;

 private:
  void check_state(StateId s) const;

  std::vector<Letter> alphabet_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::string> names_;
  std::vector<std::vector<std::pair<int, StateId>>> out_;
  std::vector<bool> initial_;
  std::vector<bool> accepting_;
};

using LetterMap = std::map<Letter, Word>;
using LetterRelabel = std::map<Letter, Letter>;

/// Automaton accepting exactly the given finite set of words.
Nfa from_words(const std::vector<Letter>& alphabet, const std::vector<Word>& words);
/// Automaton accepting the one-letter words over `letters`.
Nfa single_letters(const std::vector<Letter>& letters);
/// x+ : one or more copies of the letter.
Nfa letter_plus(const Letter& x);
Nfa empty_language(const std::vector<Letter>& alphabet);

bool accepts(const Nfa& a, const Word& w);

/// Streams the accepted words in length-lex order, where letters are ranked by
/// alphabet declaration order. Only prefixes that extend to an accepted word
/// of the current length are explored.
class AcceptedWords {
 public:
  explicit AcceptedWords(Nfa a);

  /// Next accepted word, or nullopt once the language is exhausted (finite
  /// languages only).
  std::optional<Word> next();
  /// Length of the words currently being produced.
  std::size_t current_length() const noexcept { return length_; }
  void restart();

 private:
  struct Frame {
    StateSet states;
    int next_letter = 0;
  };

  bool live(const StateSet& s, std::size_t remaining);
  void ensure_exact_table(std::size_t r);
  bool begin_length();

  Nfa nfa_;
  std::vector<std::vector<StateSet>> delta_;  // per state, per letter
  std::vector<bool> coreachable_;
  std::vector<std::vector<bool>> accept_in_exactly_;
  StateSet start_;
  StateSet reach_exact_;  // states reachable with exactly length_ letters
  std::size_t length_ = 0;
  bool in_length_ = false;
  bool exhausted_ = false;
  std::vector<Frame> stack_;
  std::vector<int> prefix_;
};

/// Calls `visit` on each accepted word of length <= max_len in length-lex
/// order; stops early when `visit` returns false.
void for_each_accepted(const Nfa& a, std::size_t max_len,
                       const std::function<bool(const Word&)>& visit);
std::vector<Word> enumerate(const Nfa& a, std::size_t max_len);

/// Letters of `b` not already in `a` are appended after those of `a`.
Nfa union_of(const Nfa& a, const Nfa& b);
Nfa concat(const Nfa& a, const Nfa& b);
Nfa intersect(const Nfa& a, const Nfa& b);

/// Image of the language under the monoid homomorphism extending `phi`.
/// `target_alphabet`, when given, fixes the output alphabet and its order;
/// otherwise letters are taken in order of first appearance in `phi`.
Nfa image_hom(const Nfa& a, const LetterMap& phi, bool allow_erasing,
              std::optional<std::vector<Letter>> target_alphabet = std::nullopt);

/// { w in domain* : h(w) in L(a) } for a letter-to-letter map h.
Nfa inverse_letter_hom(const Nfa& a, const LetterRelabel& h, const std::vector<Letter>& domain);

Nfa subtract_word(const Nfa& a, const Word& w);

/// Language-equivalent epsilon-free automaton with a unique initial state that
/// has no incoming transitions and is not accepting. Throws if eps is accepted.
Nfa normalize_no_accepting_initial(const Nfa& a);

bool is_empty(const Nfa& a);

/// Drops states that are unreachable or cannot reach an accepting state.
Nfa trim(const Nfa& a);

}  // namespace epic::automata
