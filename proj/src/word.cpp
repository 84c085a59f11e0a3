#include "epic/word.hpp"

#include <sstream>

namespace epic {

namespace {
constexpr std::string_view kInverseSuffix = "^-1";
}

Letter::Letter(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw Error("letter display string must be nonempty");
  for (char c : name_) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
      throw Error("letter display string contains whitespace: '" + name_ + "'");
  }
}

Word parse_word(std::string_view text) {
  Word w;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "eps") continue;
    w.emplace_back(tok);
  }
  return w;
}

std::string to_string(const Word& w) {
  if (w.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w[i].name();
  }
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

bool is_formal_inverse_name(const std::string& name) {
  return name.size() > kInverseSuffix.size() && name.ends_with(kInverseSuffix);
}

Letter formal_inverse(const Letter& x) {
  const auto& n = x.name();
  if (is_formal_inverse_name(n)) return Letter(n.substr(0, n.size() - kInverseSuffix.size()));
  return Letter(n + std::string(kInverseSuffix));
}

}  // namespace epic
