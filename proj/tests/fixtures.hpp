// Groups and demonstrations shared by the unit and acceptance tests.
#pragma once

#include <memory>

#include "epic/constructions.hpp"
#include "epic/demonstrations.hpp"
#include "epic/groups.hpp"

namespace fixture {

using epic::Letter;
using epic::Word;
using namespace epic::groups;
using epic::demo::Demonstration;

inline Word w(const char* text) { return epic::parse_word(text); }

/// S3 with one letter per non-identity element.
inline std::shared_ptr<const PermutationOracle> s3_all() {
  auto c = [](const char* t) { return PermutationOracle::parse_cycles(t, 3); };
  return std::make_shared<PermutationOracle>(
      3, std::vector<std::pair<Letter, PermutationOracle::Permutation>>{{Letter("s"), c("(1 2)")},
                                                                         {Letter("t"), c("(1 3)")},
                                                                         {Letter("u"), c("(2 3)")},
                                                                         {Letter("r"), c("(1 2 3)")},
                                                                         {Letter("r^-1"), c("(1 3 2)")}});
}

/// Cyclic group of order 2 on one letter.
inline std::shared_ptr<const PermutationOracle> c2(const std::string& letter) {
  return std::make_shared<PermutationOracle>(
      2, std::vector<std::pair<Letter, PermutationOracle::Permutation>>{
             {Letter(letter), PermutationOracle::parse_cycles("(1 2)", 2)}});
}

inline IntMatrix mat(std::vector<std::vector<BigInt>> rows) { return IntMatrix::from_rows(rows); }

/// Heisenberg group as upper unitriangular 3x3 integer matrices; z = [x, y]
/// generates the centre.
inline std::shared_ptr<const IntegerMatrixOracle> heisenberg() {
  IntMatrix x = mat({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}});
  IntMatrix y = mat({{1, 0, 0}, {0, 1, 1}, {0, 0, 1}});
  IntMatrix z = mat({{1, 0, 1}, {0, 1, 0}, {0, 0, 1}});
  return std::make_shared<IntegerMatrixOracle>(
      3, std::vector<std::pair<Letter, IntMatrix>>{{Letter("x"), x},
                                                   {Letter("x^-1"), x.inverse()},
                                                   {Letter("y"), y},
                                                   {Letter("y^-1"), y.inverse()},
                                                   {Letter("z"), z},
                                                   {Letter("z^-1"), z.inverse()}});
}

/// Infinite dihedral group as affine maps of Z: a translates, s reflects.
inline std::shared_ptr<const IntegerMatrixOracle> dinf() {
  IntMatrix a = mat({{1, 1}, {0, 1}});
  IntMatrix s = mat({{-1, 0}, {0, 1}});
  return std::make_shared<IntegerMatrixOracle>(
      2, std::vector<std::pair<Letter, IntMatrix>>{{Letter("a"), a}, {Letter("a^-1"), a.inverse()}, {Letter("s"), s}});
}

/// Z^k demonstration on the given generator names.
inline Demonstration zk_named(const std::vector<std::string>& names) {
  return Demonstration::identity_mapped(FreeAbelianOracle::standard(names),
                                        epic::demo::sorted_blocks_automaton(names));
}

/// Cosets of 2Z in Z = <a>.
inline epic::constructions::CosetTable even_integers() {
  using A = epic::constructions::CosetTable::Action;
  return epic::constructions::CosetTable(
      {"H", "C1"}, {Letter("a"), Letter("a^-1")}, {Word{}, w("a")},
      {A{"H", Letter("a"), "C1"}, A{"C1", Letter("a"), "H"}, A{"H", Letter("a^-1"), "C1"},
       A{"C1", Letter("a^-1"), "H"}});
}

/// Generator label x of an edge letter "[C1,x,C2]".
inline Letter edge_label(const Letter& e) {
  const std::string& n = e.name();
  auto first = n.find(',');
  auto last = n.rfind(',');
  return Letter(n.substr(first + 1, last - first - 1));
}

}  // namespace fixture
