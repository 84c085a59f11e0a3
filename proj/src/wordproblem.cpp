#include "epic/wordproblem.hpp"

#include <algorithm>

#include <json.hpp>

namespace epic::wp {

FreeAlphabet::FreeAlphabet(std::vector<std::string> generators) : generators_(std::move(generators)) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    Letter x(generators_[i]);
    if (is_formal_inverse_name(x.name())) throw Error("generator '" + x.name() + "' must not end in ^-1");
    for (std::size_t j = 0; j < i; ++j)
      if (generators_[j] == generators_[i]) throw Error("generator '" + x.name() + "' declared twice");
    letters_.push_back(x);
    letters_.push_back(formal_inverse(x));
  }
}

std::size_t FreeAlphabet::rank_of(const Letter& x) const {
  auto it = std::find(letters_.begin(), letters_.end(), x);
  if (it == letters_.end()) throw Error("unpaired letter '" + x.name() + "'");
  return static_cast<std::size_t>(it - letters_.begin());
}

Word FreeAlphabet::reduce(const Word& w) const {
  std::vector<std::size_t> stack;
  for (const auto& x : w) {
    std::size_t r = rank_of(x);
    if (!stack.empty() && (stack.back() ^ 1U) == r) {
      stack.pop_back();
    } else {
      stack.push_back(r);
    }
  }
  Word out;
  out.reserve(stack.size());
  for (auto r : stack) out.push_back(letters_[r]);
  return out;
}

Word FreeAlphabet::inverse(const Word& w) const {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(letters_[rank_of(*it) ^ 1U]);
  return out;
}

bool FreeAlphabet::length_lex_less(const Word& a, const Word& b) const {
  return epic::length_lex_less(a, b, [this](const Letter& x) { return rank_of(x); });
}

Presentation::Presentation(std::vector<std::string> generators, const std::vector<Word>& rels)
    : alphabet(std::move(generators)) {
  for (const auto& r : rels) relators.push_back(alphabet.reduce(r));
}

// ------------------------------------------------------------ enumerators

std::optional<Enumerator::Emission> Enumerator::next() {
  if (finished_) return std::nullopt;
  auto w = produce();
  if (!w) {
    finished_ = true;
    return std::nullopt;
  }
  return Emission{emitted_++, std::move(*w)};
}

void Enumerator::restart() {
  reset();
  emitted_ = 0;
  finished_ = false;
}

NormalClosureEnumerator::NormalClosureEnumerator(Presentation p) : presentation_(std::move(p)) {
  auto& rels = presentation_.relators;
  rels.erase(std::remove_if(rels.begin(), rels.end(), [](const Word& r) { return r.empty(); }), rels.end());
}

void NormalClosureEnumerator::reset() {
  level_ = 0;
  pending_.clear();
  pending_pos_ = 0;
  seen_.clear();
}

const std::vector<Word>& NormalClosureEnumerator::reduced_words(std::size_t len) const {
  const auto& letters = presentation_.alphabet.letters();
  if (reduced_by_length_.empty()) reduced_by_length_.push_back({Word{}});
  while (reduced_by_length_.size() <= len) {
    std::vector<Word> next;
    for (const auto& w : reduced_by_length_.back()) {
      for (std::size_t r = 0; r < letters.size(); ++r) {
        if (!w.empty() && (presentation_.alphabet.rank_of(w.back()) ^ 1U) == r) continue;
        Word v = w;
        v.push_back(letters[r]);
        next.push_back(std::move(v));
      }
    }
    reduced_by_length_.push_back(std::move(next));
  }
  return reduced_by_length_[len];
}

void NormalClosureEnumerator::products(std::size_t remaining, const Word& acc, std::vector<Word>& out) const {
  if (remaining == 0) {
    out.push_back(acc);
    return;
  }
  const auto& alpha = presentation_.alphabet;
  for (const auto& r : presentation_.relators) {
    if (1 + r.size() > remaining) continue;
    const std::size_t ulen = remaining - 1 - r.size();
    for (std::size_t len = 0; len <= ulen; ++len) {
      for (const auto& u : reduced_words(len)) {
        for (const Word& core : {r, alpha.inverse(r)}) {
          Word factor = concat(concat(u, core), alpha.inverse(u));
          products(remaining - 1 - r.size() - len, alpha.reduce(concat(acc, factor)), out);
        }
      }
    }
  }
}

void NormalClosureEnumerator::fill_level() {
  std::vector<Word> words;
  products(level_, Word{}, words);
  std::sort(words.begin(), words.end(),
            [this](const Word& a, const Word& b) { return presentation_.alphabet.length_lex_less(a, b); });
  pending_.clear();
  pending_pos_ = 0;
  for (auto& w : words)
    if (seen_.insert(w).second) pending_.push_back(std::move(w));
  ++level_;
}

std::optional<Word> NormalClosureEnumerator::produce() {
  while (pending_pos_ >= pending_.size()) {
    // without non-trivial relators the closure is just the empty product
    if (presentation_.relators.empty() && level_ > 0) return std::nullopt;
    fill_level();
  }
  return pending_[pending_pos_++];
}

CowordEnumerator::CowordEnumerator(groups::OraclePtr oracle) : oracle_(std::move(oracle)) {
  if (!oracle_) throw Error("coword enumerator needs a group oracle");
}

void CowordEnumerator::reset() {
  digits_.clear();
  started_ = false;
}

std::optional<Word> CowordEnumerator::produce() {
  const auto& letters = oracle_->alphabet();
  const bool trivial = std::all_of(letters.begin(), letters.end(), [&](const Letter& x) { return oracle_->is_identity({x}); });
  if (trivial) return std::nullopt;
  const std::size_t k = letters.size();
  while (true) {
    if (!started_) {
      started_ = true;
    } else {
      std::size_t i = digits_.size();
      while (i > 0 && digits_[i - 1] + 1 == k) digits_[--i] = 0;
      if (i == 0) {
        digits_.assign(digits_.size() + 1, 0);
      } else {
        ++digits_[i - 1];
      }
    }
    Word w;
    for (auto d : digits_) w.push_back(letters[d]);
    if (!oracle_->is_identity(w)) return w;
  }
}

std::unique_ptr<Enumerator> normal_closure_enumerator(const Presentation& p) {
  return std::make_unique<NormalClosureEnumerator>(p);
}

std::unique_ptr<Enumerator> language_enumerator(const automata::Nfa& a) {
  return std::make_unique<LanguageEnumerator>(a);
}

std::unique_ptr<Enumerator> coword_demo_from_wp(groups::OraclePtr oracle) {
  return std::make_unique<CowordEnumerator>(std::move(oracle));
}

// ------------------------------------------------------------ decision

std::string Frontier::to_json() const {
  nlohmann::json j{{"step", step}, {"position", position}, {"comparisons", comparisons}, {"word", word}};
  return j.dump();
}

Frontier Frontier::from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    Frontier f;
    f.step = j.at("step").get<std::size_t>();
    f.position = j.at("position").get<std::size_t>();
    f.comparisons = j.at("comparisons").get<std::uint64_t>();
    f.word = j.at("word").get<std::string>();
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed frontier: ") + e.what());
  }
}

std::string to_string(WpVerdict::Kind k) {
  switch (k) {
    case WpVerdict::Kind::in_wp:
      return "IN_WP";
    case WpVerdict::Kind::not_in_wp:
      return "NOT_IN_WP";
    case WpVerdict::Kind::budget_exceeded:
      return "BUDGET_EXCEEDED";
  }
  return "?";
}

namespace {

// Memoized, reduced access to an enumerator's output.
class ReducedStream {
 public:
  ReducedStream(Enumerator& e, const FreeAlphabet& alphabet, Word suffix)
      : e_(e), alphabet_(alphabet), suffix_(std::move(suffix)) {
    e_.restart();
  }

  const Word* at(std::size_t i) {
    while (words_.size() <= i) {
      auto next = e_.next();
      if (!next) return nullptr;
      words_.push_back(alphabet_.reduce(concat(next->word, suffix_)));
    }
    return &words_[i];
  }
  bool ended_before(std::size_t i) {
    return at(i) == nullptr;
  }

 private:
  Enumerator& e_;
  const FreeAlphabet& alphabet_;
  Word suffix_;
  std::vector<Word> words_;
};

std::pair<std::size_t, std::size_t> pair_at(std::size_t step, std::size_t q) {
  return q < step ? std::pair{q, step} : std::pair{step, q - step};
}

}  // namespace

WpVerdict decide_word(const Presentation& p, const Word& w, Enumerator& f, Enumerator& g, std::uint64_t budget,
                      const std::optional<Frontier>& resume) {
  const Word target = p.alphabet.reduce(w);
  ReducedStream fs(f, p.alphabet, p.alphabet.inverse(target));
  ReducedStream gs(g, p.alphabet, Word{});

  WpVerdict v;
  Frontier& fr = v.frontier;
  if (resume) {
    if (resume->word != epic::to_string(w)) throw Error("frontier belongs to word '" + resume->word + "'");
    fr = *resume;
  }
  fr.word = epic::to_string(w);

  std::uint64_t spent = 0;
  for (;; ++fr.step, fr.position = 0) {
    const std::size_t i = fr.step;
    if (fs.ended_before(i) && gs.ended_before(i)) {
      v.streams_exhausted = true;
      return v;
    }
    for (; fr.position <= 2 * i + 1; ++fr.position) {
      if (spent >= budget) return v;
      if (fr.position == 0) {
        const Word* gi = gs.at(i);
        if (!gi) continue;
        ++spent;
        ++fr.comparisons;
        if (*gi == target) {
          v.kind = WpVerdict::Kind::in_wp;
          v.certificate_i = i;
          for (std::size_t q = 0; q <= 2 * i; ++q) {
            auto [j, k] = pair_at(i, q);
            const Word* a = fs.at(j);
            const Word* b = gs.at(k);
            if (a && b && *a == *b)
              throw InconsistentInputs("certificates of both kinds found at step " + std::to_string(i) +
                                       ": f does not avoid the word problem or g leaves it");
          }
          return v;
        }
        continue;
      }
      auto [j, k] = pair_at(i, fr.position - 1);
      const Word* a = fs.at(j);
      const Word* b = gs.at(k);
      if (!a || !b) continue;
      ++spent;
      ++fr.comparisons;
      if (*a == *b) {
        v.kind = WpVerdict::Kind::not_in_wp;
        v.certificate_j = j;
        v.certificate_k = k;
        return v;
      }
    }
  }
}

bool replay_certificate(const Presentation& p, const Word& w, const WpVerdict& v, Enumerator& f, Enumerator& g) {
  const Word target = p.alphabet.reduce(w);
  auto nth = [](Enumerator& e, std::size_t n) -> std::optional<Word> {
    e.restart();
    std::optional<Enumerator::Emission> em;
    for (std::size_t i = 0; i <= n; ++i) {
      em = e.next();
      if (!em) return std::nullopt;
    }
    return em->word;
  };
  switch (v.kind) {
    case WpVerdict::Kind::in_wp: {
      auto gi = nth(g, v.certificate_i);
      return gi && p.alphabet.reduce(*gi) == target;
    }
    case WpVerdict::Kind::not_in_wp: {
      auto fj = nth(f, v.certificate_j);
      auto gk = nth(g, v.certificate_k);
      return fj && gk && p.alphabet.reduce(concat(*fj, p.alphabet.inverse(target))) == p.alphabet.reduce(*gk);
    }
    case WpVerdict::Kind::budget_exceeded:
      return false;
  }
  return false;
}

}  // namespace epic::wp
