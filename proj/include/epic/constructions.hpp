#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "epic/automata.hpp"
#include "epic/demonstrations.hpp"
#include "epic/graph_product.hpp"

namespace epic::constructions {

using automata::LetterMap;
using automata::Nfa;
using demo::Demonstration;
using groups::OraclePtr;
using groups::VertexGraph;

/// Membership test on words over an oracle alphabet.
using WordPredicate = std::function<bool(const Word&)>;

// ------------------------------------------------------------ generating sets

/// Re-expresses `d` over `target_alphabet`. Each target letter evaluates
/// through `target_eval` (identity when a letter is missing from it) and each
/// source letter x is replaced by the non-empty target word phi(x), which must
/// represent the same element.
Demonstration change_generators(const Demonstration& d, const std::vector<Letter>& target_alphabet,
                                const LetterMap& target_eval, const LetterMap& phi);

/// For each language letter of `d`, the length-lex first non-empty target word
/// of length <= max_len representing the same element. Throws if none exists.
LetterMap find_generator_images(const Demonstration& d, const std::vector<Letter>& target_alphabet,
                                const LetterMap& target_eval, std::size_t max_len);

// ------------------------------------------------------------ finite index and extensions

/// Demonstration for E from one for the normal subgroup N and one for the
/// quotient Q = E/N. Every language letter of either input evaluates in E
/// through `lift` (default: the E generator of the same name). Language is
/// L_N u L_Q u L_N L_Q.
Demonstration extension(const Demonstration& dN, const Demonstration& dQ, OraclePtr oracle_e,
                        const WordPredicate& in_n, const LetterMap& lift = {});

/// Bounded checks of the extension preconditions: N words up to `max_len` land
/// in N and avoid the identity, Q words up to `max_len` avoid N. Returns one
/// message per violation.
std::vector<std::string> check_extension_inputs(const Demonstration& dN, const Demonstration& dQ,
                                                const groups::GroupOracle& oracle_e, const WordPredicate& in_n,
                                                const LetterMap& lift, std::size_t max_len);

/// Demonstration for a finite index overgroup H of G. `transversal` maps each
/// new letter to an H word; together with the identity these form a right
/// transversal of G. Language is L_G u T' u L_G T'.
Demonstration fi_overgroup(const Demonstration& dG, OraclePtr oracle_h, const LetterMap& transversal,
                           const WordPredicate& in_g, const LetterMap& lift = {});

/// Right cosets of a finite index subgroup H with a transversal and the
/// action of the generators. Coset 0 is H itself.
class CosetTable {
 public:
  struct Action {
    std::string from;
    Letter generator;
    std::string to;
  };

  /// Validates totality, bijectivity, transitivity and that each
  /// representative leads from H to its own coset.
  CosetTable(std::vector<std::string> cosets, std::vector<Letter> generators, std::vector<Word> representatives,
             const std::vector<Action>& actions);

  /// Cosets of the subgroup generated by `subgroup_generators` (oracle words)
  /// in a permutation group, with length-lex least representatives.
  static CosetTable from_permutation_group(const groups::PermutationOracle& g,
                                           const std::vector<Word>& subgroup_generators);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t c) const { return names_.at(c); }
  std::size_t index(const std::string& name) const;
  const std::vector<Letter>& generators() const noexcept { return generators_; }
  const Word& representative(std::size_t c) const { return reps_.at(c); }
  std::size_t act(std::size_t coset, const Letter& x) const;
  /// Coset reached from H by reading `w`.
  std::size_t trace(const Word& w) const;
  bool in_subgroup(const Word& w) const { return trace(w) == 0; }
  std::vector<Action> actions() const;

 private:
  std::size_t generator_index(const Letter& x) const;

  std::vector<std::string> names_;
  std::vector<Letter> generators_;
  std::vector<Word> reps_;
  std::vector<std::vector<std::size_t>> action_;  // [coset][generator]
};

/// Display string of the coset-graph edge (C1, x, C2).
Letter edge_letter(const std::string& from, const Letter& x, const std::string& to);

/// Demonstration for the subgroup described by `table`, over the edge
/// letters of its coset graph. Keys stay those of dG's oracle; coverage is
/// restricted to the subgroup.
Demonstration fi_subgroup(const Demonstration& dG, const CosetTable& table);

// ------------------------------------------------------------ graph products

struct AdmissibleAutomaton {
  Nfa nfa;  // letters are vertex names
  std::vector<std::optional<std::size_t>> state_vertex;  // nullopt for the initial state
};

/// Automaton of the non-empty pruned type strings of the graph: no two equal
/// vertices can be shuffled together and the string is lexicographically least
/// (vertex declaration order) in its shuffle class. The unique initial state
/// is not accepting, every other state is, and each non-initial state is
/// entered only by its own vertex letter.
AdmissibleAutomaton admissible_automaton(const VertexGraph& g);

/// Demonstration for the graph product, gluing a normalized copy of each
/// local language onto the admissible automaton states of its vertex.
Demonstration graph_product(const VertexGraph& g, const std::vector<Demonstration>& local);

// ------------------------------------------------------------ cross sections

inline const std::string kPadding = "#pad";

/// Triple letter "(x|y|z)" with nullopt standing for the padding symbol.
Letter triple_letter(const std::optional<Letter>& a, const std::optional<Letter>& b,
                     const std::optional<Letter>& c);
std::array<std::optional<Letter>, 3> parse_triple(const Letter& t);

/// Padded letter-aligned encoding of a triple of words.
Word trinary_projection(const Word& u, const Word& v, const Word& w);

/// True when every accepted word is a valid padded triple.
bool satisfies_padding(const Nfa& triples);

/// First-coordinate projection with padding erased.
Nfa autostackable_projection(const Nfa& triples);

/// Demonstration from a cross section by removing the identity's
/// representative.
Demonstration cross_section_to_demo(const Nfa& normal_forms, OraclePtr oracle, const Word& identity_rep = {});

}  // namespace epic::constructions
