#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace epic {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A symbol of an alphabet, identified by its display string.
class Letter {
 public:
  Letter() = default;
  explicit Letter(std::string name);

  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;

 private:
  std::string name_;
};

using Word = std::vector<Letter>;

/// Builds a word from whitespace separated display strings. "eps" and "" give
/// the empty word.
Word parse_word(std::string_view text);

/// Renders a word as space separated display strings; the empty word renders
/// as "eps".
std::string to_string(const Word& w);

Word concat(const Word& a, const Word& b);

/// Formal inverse under the `x` / `x^-1` naming convention.
Letter formal_inverse(const Letter& x);
bool is_formal_inverse_name(const std::string& name);

/// Length-lex comparison where letters are ranked by `rank` (smaller first).
template <typename Rank>
bool length_lex_less(const Word& a, const Word& b, Rank rank) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto ra = rank(a[i]);
    auto rb = rank(b[i]);
    if (ra != rb) return ra < rb;
  }
  return false;
}

}  // namespace epic

template <>
struct std::hash<epic::Letter> {
  std::size_t operator()(const epic::Letter& l) const noexcept {
    return std::hash<std::string>{}(l.name());
  }
};
