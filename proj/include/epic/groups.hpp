#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "epic/word.hpp"

namespace epic::groups {

/// Canonical byte string standing in for a group element. Keys carry a
/// backend tag, so keys of different oracles never compare equal.
class ElementKey {
 public:
  ElementKey() = default;
  explicit ElementKey(std::string bytes) : bytes_(std::move(bytes)) {}

  const std::string& bytes() const noexcept { return bytes_; }

  friend bool operator==(const ElementKey&, const ElementKey&) = default;
  friend auto operator<=>(const ElementKey&, const ElementKey&) = default;

 private:
  std::string bytes_;
};

/// Exact evaluation of words over a finite monoid generating set.
class GroupOracle {
 public:
  virtual ~GroupOracle() = default;

  const std::vector<Letter>& alphabet() const noexcept { return alphabet_; }
  bool has_letter(const Letter& x) const { return positions_.count(x.name()) != 0; }

  /// Throws on letters outside the alphabet.
  virtual ElementKey evaluate(const Word& w) const = 0;
  virtual ElementKey identity_key() const = 0;
  bool is_identity(const Word& w) const { return evaluate(w) == identity_key(); }

  /// Backend name as used in group blocks ("perm", "zk", ...).
  virtual std::string kind() const = 0;
  /// True only when the group is known to be finite.
  virtual bool is_finite() const { return false; }

 protected:
  explicit GroupOracle(std::vector<Letter> alphabet);
  /// Index of `x` in the alphabet; throws for unknown letters.
  std::size_t position(const Letter& x) const;

 private:
  std::vector<Letter> alphabet_;
  std::unordered_map<std::string, std::size_t> positions_;
};

using OraclePtr = std::shared_ptr<const GroupOracle>;

/// Element keys within distance `radius` of the identity, each mapped to its
/// length-lex least representative (letters ranked by alphabet order).
using Ball = std::map<ElementKey, Word>;
Ball ball(const GroupOracle& o, std::size_t radius);

/// Permutations of {1..n} acting on the right: the word `x y` applies x first.
class PermutationOracle final : public GroupOracle {
 public:
  using Permutation = std::vector<int>;  // 0-based images

  PermutationOracle(int degree, std::vector<std::pair<Letter, Permutation>> generators);

  /// Parses cycle notation such as "(1 2)(3 4 5)" or "()" into 0-based images.
  static Permutation parse_cycles(const std::string& text, int degree);
  static std::string format_cycles(const Permutation& p);

  int degree() const noexcept { return degree_; }
  const Permutation& generator(const Letter& x) const { return images_[position(x)]; }
  Permutation permutation_of(const Word& w) const;

  ElementKey evaluate(const Word& w) const override;
  ElementKey identity_key() const override;
  std::string kind() const override { return "perm"; }
  bool is_finite() const override { return true; }

  static ElementKey key_of(const Permutation& p);

 private:
  int degree_;
  std::vector<Permutation> images_;
};

/// Free abelian group Z^k; each letter is an integer vector.
class FreeAbelianOracle final : public GroupOracle {
 public:
  using Vector = std::vector<std::int64_t>;

  FreeAbelianOracle(std::size_t rank, std::vector<std::pair<Letter, Vector>> generators);
  /// Standard symmetric generators named `names[i]` and `names[i]^-1`.
  static std::shared_ptr<FreeAbelianOracle> standard(const std::vector<std::string>& names);

  std::size_t rank() const noexcept { return rank_; }
  const Vector& generator(const Letter& x) const { return vectors_[position(x)]; }
  Vector vector_of(const Word& w) const;

  ElementKey evaluate(const Word& w) const override;
  ElementKey identity_key() const override;
  std::string kind() const override { return "zk"; }
  bool is_finite() const override { return rank_ == 0; }

  static ElementKey key_of(const Vector& v);

 private:
  std::size_t rank_;
  std::vector<Vector> vectors_;
};

/// Free group on named generators; the alphabet holds each generator followed
/// by its formal inverse.
class FreeGroupOracle final : public GroupOracle {
 public:
  explicit FreeGroupOracle(std::vector<std::string> generator_names);
  /// Generators a, b, c, ... for rank <= 26, x1, x2, ... beyond.
  static std::vector<std::string> default_names(std::size_t rank);

  std::size_t rank() const noexcept { return generators_.size(); }
  const std::vector<std::string>& generator_names() const noexcept { return generators_; }
  Word reduce(const Word& w) const;

  ElementKey evaluate(const Word& w) const override;
  ElementKey identity_key() const override;
  std::string kind() const override { return "free"; }
  bool is_finite() const override { return generators_.empty(); }

 private:
  std::vector<std::string> generators_;
};

using BigInt = boost::multiprecision::cpp_int;

/// Square integer matrix with exact entries, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t dim);
  static IntMatrix identity(std::size_t dim);
  static IntMatrix from_rows(const std::vector<std::vector<BigInt>>& rows);

  std::size_t dim() const noexcept { return dim_; }
  BigInt& at(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
  const BigInt& at(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }

  BigInt determinant() const;
  /// Exact inverse; requires determinant +-1.
  IntMatrix inverse() const;
  std::string to_string() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<BigInt> entries_;
};

/// Integer matrices of determinant +-1, multiplied left to right.
class IntegerMatrixOracle final : public GroupOracle {
 public:
  IntegerMatrixOracle(std::size_t dim, std::vector<std::pair<Letter, IntMatrix>> generators);

  std::size_t dim() const noexcept { return dim_; }
  const IntMatrix& generator(const Letter& x) const { return matrices_[position(x)]; }
  IntMatrix matrix_of(const Word& w) const;

  ElementKey evaluate(const Word& w) const override;
  ElementKey identity_key() const override;
  std::string kind() const override { return "matrix"; }

  static ElementKey key_of(const IntMatrix& m);

 private:
  std::size_t dim_;
  std::vector<IntMatrix> matrices_;
};

}  // namespace epic::groups
