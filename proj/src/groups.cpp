#include "epic/groups.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace epic::groups {

GroupOracle::GroupOracle(std::vector<Letter> alphabet) : alphabet_(std::move(alphabet)) {
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    if (!positions_.emplace(alphabet_[i].name(), i).second)
      throw Error("alphabet collision: generator '" + alphabet_[i].name() + "' declared twice");
  }
}

std::size_t GroupOracle::position(const Letter& x) const {
  auto it = positions_.find(x.name());
  if (it == positions_.end()) throw Error("unknown letter '" + x.name() + "' for " + kind() + " group");
  return it->second;
}

Ball ball(const GroupOracle& o, std::size_t radius) {
  Ball out;
  std::vector<Word> frontier{Word{}};
  out.emplace(o.identity_key(), Word{});
  // Extending the length-lex least witnesses of one sphere, in order, visits
  // candidates of the next sphere in length-lex order.
  for (std::size_t r = 0; r < radius && !frontier.empty(); ++r) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (const auto& x : o.alphabet()) {
        Word v = w;
        v.push_back(x);
        if (out.emplace(o.evaluate(v), v).second) next.push_back(std::move(v));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------- permutations

namespace {

std::vector<Letter> letters_of(const auto& generators) {
  std::vector<Letter> out;
  for (const auto& g : generators) out.push_back(g.first);
  return out;
}

}  // namespace

PermutationOracle::PermutationOracle(int degree, std::vector<std::pair<Letter, Permutation>> generators)
    : GroupOracle(letters_of(generators)), degree_(degree) {
  if (degree < 1) throw Error("permutation degree must be positive");
  for (auto& [x, p] : generators) {
    if (static_cast<int>(p.size()) != degree) throw Error("generator '" + x.name() + "' has wrong degree");
    std::vector<bool> hit(degree, false);
    for (int i : p) {
      if (i < 0 || i >= degree || hit[i]) throw Error("generator '" + x.name() + "' is not a bijection");
      hit[i] = true;
    }
    images_.push_back(std::move(p));
  }
}

PermutationOracle::Permutation PermutationOracle::parse_cycles(const std::string& text, int degree) {
  Permutation p(degree);
  for (int i = 0; i < degree; ++i) p[i] = i;
  std::vector<int> cycle;
  bool open = false;
  std::string number;
  std::vector<bool> used(degree, false);
  auto flush_number = [&] {
    if (number.empty()) return;
    int v = std::stoi(number) - 1;
    number.clear();
    if (v < 0 || v >= degree) throw Error("cycle entry out of range in '" + text + "'");
    if (used[v]) throw Error("point repeated in cycles '" + text + "'");
    used[v] = true;
    cycle.push_back(v);
  };
  for (char c : text) {
    if (c == '(') {
      if (open) throw Error("nested cycle in '" + text + "'");
      open = true;
      cycle.clear();
    } else if (c == ')') {
      if (!open) throw Error("unbalanced cycle in '" + text + "'");
      flush_number();
      for (std::size_t i = 0; i < cycle.size(); ++i) p[cycle[i]] = cycle[(i + 1) % cycle.size()];
      open = false;
    } else if (c >= '0' && c <= '9') {
      if (!open) throw Error("cycle entry outside parentheses in '" + text + "'");
      number += c;
    } else if (c == ' ' || c == ',') {
      flush_number();
    } else {
      throw Error("unexpected character in cycle notation '" + text + "'");
    }
  }
  if (open) throw Error("unterminated cycle in '" + text + "'");
  return p;
}

std::string PermutationOracle::format_cycles(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += '(';
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      if (j != i) out += ' ';
      out += std::to_string(j + 1);
      seen[j] = true;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

PermutationOracle::Permutation PermutationOracle::permutation_of(const Word& w) const {
  Permutation p(degree_);
  for (int i = 0; i < degree_; ++i) p[i] = i;
  for (const auto& x : w) {
    const auto& g = images_[position(x)];
    for (auto& v : p) v = g[v];
  }
  return p;
}

ElementKey PermutationOracle::key_of(const Permutation& p) {
  std::string s = "perm:";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p[i] + 1);
  }
  return ElementKey(std::move(s));
}

ElementKey PermutationOracle::evaluate(const Word& w) const { return key_of(permutation_of(w)); }

ElementKey PermutationOracle::identity_key() const { return key_of(permutation_of({})); }

// ---------------------------------------------------------------- Z^k

FreeAbelianOracle::FreeAbelianOracle(std::size_t rank, std::vector<std::pair<Letter, Vector>> generators)
    : GroupOracle(letters_of(generators)), rank_(rank) {
  for (auto& [x, v] : generators) {
    if (v.size() != rank) throw Error("generator '" + x.name() + "' has wrong rank");
    vectors_.push_back(std::move(v));
  }
}

std::shared_ptr<FreeAbelianOracle> FreeAbelianOracle::standard(const std::vector<std::string>& names) {
  std::vector<std::pair<Letter, Vector>> gens;
  for (std::size_t i = 0; i < names.size(); ++i) {
    Vector e(names.size(), 0);
    e[i] = 1;
    gens.emplace_back(Letter(names[i]), e);
    e[i] = -1;
    gens.emplace_back(formal_inverse(Letter(names[i])), e);
  }
  return std::make_shared<FreeAbelianOracle>(names.size(), std::move(gens));
}

FreeAbelianOracle::Vector FreeAbelianOracle::vector_of(const Word& w) const {
  Vector v(rank_, 0);
  for (const auto& x : w) {
    const auto& g = vectors_[position(x)];
    for (std::size_t i = 0; i < rank_; ++i) v[i] += g[i];
  }
  return v;
}

ElementKey FreeAbelianOracle::key_of(const Vector& v) {
  std::string s = "zk:(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return ElementKey(s + ")");
}

ElementKey FreeAbelianOracle::evaluate(const Word& w) const { return key_of(vector_of(w)); }

ElementKey FreeAbelianOracle::identity_key() const { return key_of(Vector(rank_, 0)); }

// ---------------------------------------------------------------- free groups

namespace {

std::vector<Letter> paired_alphabet(const std::vector<std::string>& names) {
  std::vector<Letter> out;
  for (const auto& n : names) {
    Letter x(n);
    if (is_formal_inverse_name(n)) throw Error("free generator name '" + n + "' must not end in ^-1");
    out.push_back(x);
    out.push_back(formal_inverse(x));
  }
  return out;
}

}  // namespace

FreeGroupOracle::FreeGroupOracle(std::vector<std::string> generator_names)
    : GroupOracle(paired_alphabet(generator_names)), generators_(std::move(generator_names)) {}

std::vector<std::string> FreeGroupOracle::default_names(std::size_t rank) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < rank; ++i)
    out.push_back(rank <= 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i + 1));
  return out;
}

Word FreeGroupOracle::reduce(const Word& w) const {
  std::vector<std::size_t> stack;
  for (const auto& x : w) {
    std::size_t p = position(x);
    // inverse pairs occupy positions 2i, 2i+1
    if (!stack.empty() && (stack.back() ^ 1U) == p) {
      stack.pop_back();
    } else {
      stack.push_back(p);
    }
  }
  Word out;
  for (auto p : stack) out.push_back(alphabet()[p]);
  return out;
}

ElementKey FreeGroupOracle::evaluate(const Word& w) const { return ElementKey("free:" + to_string(reduce(w))); }

ElementKey FreeGroupOracle::identity_key() const { return ElementKey("free:eps"); }

// ---------------------------------------------------------------- matrices

IntMatrix::IntMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

IntMatrix IntMatrix::identity(std::size_t dim) {
  IntMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<BigInt>>& rows) {
  IntMatrix m(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) throw Error("matrix is not square");
    for (std::size_t c = 0; c < rows.size(); ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.dim_ != b.dim_) throw Error("matrix dimension mismatch");
  IntMatrix out(a.dim_);
  for (std::size_t i = 0; i < a.dim_; ++i)
    for (std::size_t k = 0; k < a.dim_; ++k) {
      const BigInt& aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < a.dim_; ++j) out.at(i, j) += aik * b.at(k, j);
    }
  return out;
}

// Fraction-free (Bareiss) elimination.
BigInt IntMatrix::determinant() const {
  if (dim_ == 0) return 1;
  std::vector<BigInt> m = entries_;
  auto at = [&](std::size_t r, std::size_t c) -> BigInt& { return m[r * dim_ + c]; };
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < dim_; ++k) {
    if (at(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < dim_ && at(swap, k) == 0) ++swap;
      if (swap == dim_) return 0;
      for (std::size_t c = 0; c < dim_; ++c) std::swap(at(k, c), at(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < dim_; ++i)
      for (std::size_t j = k + 1; j < dim_; ++j) at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    prev = at(k, k);
  }
  return sign * at(dim_ - 1, dim_ - 1);
}

IntMatrix IntMatrix::inverse() const {
  BigInt det = determinant();
  if (det != 1 && det != -1) throw Error("matrix is not invertible over the integers");
  IntMatrix inv(dim_);
  if (dim_ == 1) {
    inv.at(0, 0) = det;
    return inv;
  }
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      IntMatrix minor(dim_ - 1);
      for (std::size_t i = 0, mi = 0; i < dim_; ++i) {
        if (i == r) continue;
        for (std::size_t j = 0, mj = 0; j < dim_; ++j) {
          if (j == c) continue;
          minor.at(mi, mj++) = at(i, j);
        }
        ++mi;
      }
      BigInt cofactor = minor.determinant();
      if ((r + c) % 2) cofactor = -cofactor;
      inv.at(c, r) = cofactor * det;  // det is its own inverse
    }
  }
  return inv;
}

std::string IntMatrix::to_string() const {
  std::string s = "[";
  for (std::size_t r = 0; r < dim_; ++r) {
    if (r) s += ',';
    s += '[';
    for (std::size_t c = 0; c < dim_; ++c) {
      if (c) s += ',';
      s += at(r, c).str();
    }
    s += ']';
  }
  return s + "]";
}

IntegerMatrixOracle::IntegerMatrixOracle(std::size_t dim, std::vector<std::pair<Letter, IntMatrix>> generators)
    : GroupOracle(letters_of(generators)), dim_(dim) {
  for (auto& [x, m] : generators) {
    if (m.dim() != dim) throw Error("generator '" + x.name() + "' has wrong dimension");
    BigInt det = m.determinant();
    if (det != 1 && det != -1) throw Error("generator '" + x.name() + "' does not have determinant +-1");
    matrices_.push_back(std::move(m));
  }
}

IntMatrix IntegerMatrixOracle::matrix_of(const Word& w) const {
  IntMatrix m = IntMatrix::identity(dim_);
  for (const auto& x : w) m = m * matrices_[position(x)];
  return m;
}

ElementKey IntegerMatrixOracle::key_of(const IntMatrix& m) { return ElementKey("mat:" + m.to_string()); }

ElementKey IntegerMatrixOracle::evaluate(const Word& w) const { return key_of(matrix_of(w)); }

ElementKey IntegerMatrixOracle::identity_key() const { return key_of(IntMatrix::identity(dim_)); }

}  // namespace epic::groups
