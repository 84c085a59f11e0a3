#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "epic/automata.hpp"
#include "epic/groups.hpp"

namespace epic::wp {

/// Generators x together with formal inverses x^-1.
class FreeAlphabet {
 public:
  explicit FreeAlphabet(std::vector<std::string> generators);

  const std::vector<std::string>& generators() const noexcept { return generators_; }
  /// x1, x1^-1, x2, x2^-1, ...
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  /// Throws for letters outside the paired alphabet.
  std::size_t rank_of(const Letter& x) const;

  /// Free reduction. Throws on unpaired letters.
  Word reduce(const Word& w) const;
  Word inverse(const Word& w) const;
  bool length_lex_less(const Word& a, const Word& b) const;

 private:
  std::vector<std::string> generators_;
  std::vector<Letter> letters_;
};

/// Group presentation <X | R> with reduced relators.
struct Presentation {
  Presentation(std::vector<std::string> generators, const std::vector<Word>& relators);

  FreeAlphabet alphabet;
  std::vector<Word> relators;
};

/// Restartable stream of words; the i-th emitted word depends on i alone.
class Enumerator {
 public:
  struct Emission {
    std::size_t index;
    Word word;
  };

  virtual ~Enumerator() = default;

  /// Next word, or nullopt once a finite stream has ended.
  std::optional<Emission> next();
  void restart();
  /// Number of words emitted since the last restart.
  std::size_t emitted() const noexcept { return emitted_; }
  /// True once the stream is known to have ended.
  bool finished() const noexcept { return finished_; }

 protected:
  virtual std::optional<Word> produce() = 0;
  virtual void reset() = 0;

 private:
  std::size_t emitted_ = 0;
  bool finished_ = false;
};

/// Reduced forms of products of conjugates u r^(+-1) u^-1, grouped by total
/// size m + sum|u_i| + sum|r_i| and length-lex sorted within a size. Every
/// element of the normal closure appears; each reduced word is emitted once.
class NormalClosureEnumerator final : public Enumerator {
 public:
  explicit NormalClosureEnumerator(Presentation p);

 protected:
  std::optional<Word> produce() override;
  void reset() override;

 private:
  void fill_level();
  void products(std::size_t remaining, const Word& acc, std::vector<Word>& out) const;
  const std::vector<Word>& reduced_words(std::size_t len) const;

  Presentation presentation_;
  std::size_t level_ = 0;
  std::vector<Word> pending_;
  std::size_t pending_pos_ = 0;
  std::set<Word> seen_;
  mutable std::vector<std::vector<Word>> reduced_by_length_;
};

/// Accepted words of an automaton in length-lex order.
class LanguageEnumerator final : public Enumerator {
 public:
  explicit LanguageEnumerator(automata::Nfa a) : words_(std::move(a)) {}

 protected:
  std::optional<Word> produce() override { return words_.next(); }
  void reset() override { words_.restart(); }

 private:
  automata::AcceptedWords words_;
};

/// Words over the oracle alphabet, length-lex, skipping identity words.
class CowordEnumerator final : public Enumerator {
 public:
  explicit CowordEnumerator(groups::OraclePtr oracle);

 protected:
  std::optional<Word> produce() override;
  void reset() override;

 private:
  groups::OraclePtr oracle_;
  std::vector<std::size_t> digits_;
  bool started_ = false;
};

std::unique_ptr<Enumerator> normal_closure_enumerator(const Presentation& p);
std::unique_ptr<Enumerator> language_enumerator(const automata::Nfa& a);
std::unique_ptr<Enumerator> coword_demo_from_wp(groups::OraclePtr oracle);

/// Position of a decision run: the loop index, the next check within it
/// (0 is the word-problem test, 1 + p the p-th (j, k) pair) and the number of
/// comparisons spent so far.
struct Frontier {
  std::size_t step = 0;
  std::size_t position = 0;
  std::uint64_t comparisons = 0;
  std::string word;

  std::string to_json() const;
  static Frontier from_json(const std::string& text);
};

struct WpVerdict {
  enum class Kind { in_wp, not_in_wp, budget_exceeded };

  Kind kind = Kind::budget_exceeded;
  std::size_t certificate_i = 0;  // in_wp: g index
  std::size_t certificate_j = 0;  // not_in_wp: f index
  std::size_t certificate_k = 0;  // not_in_wp: g index
  Frontier frontier;              // where the run stopped
  /// Both streams ended before a certificate was found.
  bool streams_exhausted = false;
};

std::string to_string(WpVerdict::Kind k);

/// Raised when a run finds certificates of both kinds.
class InconsistentInputs : public Error {
 public:
  using Error::Error;
};

/// Semi-decision of the word problem: `f` enumerates a language avoiding the
/// word problem whose image is every non-identity element, `g` enumerates
/// words of the normal closure. At loop index i, first compares g(i) with w,
/// then every pair (j, k) with max(j, k) = i in lexicographic order, checking
/// whether f(j) w^-1 and g(k) have the same free reduction. `budget` caps the
/// comparisons spent by this call.
WpVerdict decide_word(const Presentation& p, const Word& w, Enumerator& f, Enumerator& g, std::uint64_t budget,
                      const std::optional<Frontier>& resume = std::nullopt);

/// Re-derives a certificate from fresh runs of the enumerators.
bool replay_certificate(const Presentation& p, const Word& w, const WpVerdict& v, Enumerator& f, Enumerator& g);

}  // namespace epic::wp
