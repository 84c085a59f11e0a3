#include "epic/automata.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <string>

namespace epic::automata {

namespace {

std::size_t& state_cap() {
  static std::size_t cap = [] {
    std::size_t value = 1'000'000;
    if (const char* env = std::getenv("EPIC_MAX_STATES")) {
      try {
        value = static_cast<std::size_t>(std::stoull(env));
      } catch (const std::exception&) {
        // unparsable values keep the default
      }
    }
    return value;
  }();
  return cap;
}

StateSet from_mask(const std::vector<bool>& mask) {
  StateSet out;
  for (StateId s = 0; s < mask.size(); ++s)
    if (mask[s]) out.push_back(s);
  return out;
}

// Epsilon-free equivalent on the same state set.
Nfa remove_epsilon(const Nfa& a) {
  Nfa out(a.alphabet());
  for (StateId s = 0; s < a.state_count(); ++s) out.add_state();
  for (StateId p = 0; p < a.state_count(); ++p) {
    StateSet closure = a.epsilon_closure({p});
    for (StateId q : closure) {
      if (a.is_accepting(q)) out.set_accepting(p);
      for (auto [label, r] : a.out(q))
        if (label != Nfa::kEpsilon) out.add_transition(p, label, r);
    }
    if (a.is_initial(p)) out.set_initial(p);
  }
  return out;
}

std::vector<Letter> merged_alphabet(const Nfa& a, const Nfa& b) {
  std::vector<Letter> letters = a.alphabet();
  for (const auto& x : b.alphabet())
    if (!a.letter_index(x)) letters.push_back(x);
  return letters;
}

// Product of an epsilon-free automaton with a deterministic tracker.
template <typename TrackerStep, typename AcceptPair>
Nfa product_with_tracker(const Nfa& eps_free, std::size_t tracker_start, TrackerStep tracker_step,
                         AcceptPair accept_pair) {
  Nfa out(eps_free.alphabet());
  std::map<std::pair<StateId, std::size_t>, StateId> ids;
  std::deque<std::pair<StateId, std::size_t>> queue;
  auto intern = [&](StateId p, std::size_t t) {
    auto [it, inserted] = ids.try_emplace({p, t}, 0);
    if (inserted) {
      it->second = out.add_state();
      if (accept_pair(p, t)) out.set_accepting(it->second);
      queue.emplace_back(p, t);
    }
    return it->second;
  };
  for (StateId p : eps_free.initial_states()) out.set_initial(intern(p, tracker_start));
  if (out.state_count() == 0) out.set_initial(out.add_state());
  while (!queue.empty()) {
    auto [p, t] = queue.front();
    queue.pop_front();
    StateId from = ids.at({p, t});
    for (auto [label, r] : eps_free.out(p)) {
      std::size_t t2 = tracker_step(t, label);
      out.add_transition(from, label, intern(r, t2));
    }
  }
  return out;
}

}  // namespace

std::size_t max_states() { return state_cap(); }
void set_max_states(std::size_t cap) { state_cap() = cap; }

Nfa::Nfa(std::vector<Letter> alphabet) {
  for (auto& x : alphabet) {
    if (index_.count(x.name())) throw Error("alphabet collision: letter '" + x.name() + "' declared twice");
    add_letter(x);
  }
}

std::optional<int> Nfa::letter_index(const Letter& x) const {
  auto it = index_.find(x.name());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Nfa::add_letter(const Letter& x) {
  auto [it, inserted] = index_.try_emplace(x.name(), static_cast<int>(alphabet_.size()));
  if (inserted) alphabet_.push_back(x);
  return it->second;
}

StateId Nfa::add_state(std::string name) {
  if (out_.size() >= max_states())
    throw LimitExceeded("automaton exceeds the state cap of " + std::to_string(max_states()) +
                        " (EPIC_MAX_STATES)");
  names_.push_back(std::move(name));
  out_.emplace_back();
  initial_.push_back(false);
  accepting_.push_back(false);
  return out_.size() - 1;
}

std::string Nfa::state_name(StateId s) const {
  check_state(s);
  return names_[s].empty() ? "q" + std::to_string(s) : names_[s];
}

void Nfa::check_state(StateId s) const {
  if (s >= out_.size()) throw Error("state id " + std::to_string(s) + " out of range");
}

void Nfa::add_transition(StateId from, const Letter& label, StateId to) {
  auto idx = letter_index(label);
  if (!idx) throw Error("transition label '" + label.name() + "' is not in the alphabet");
  add_transition(from, *idx, to);
}

void Nfa::add_transition(StateId from, int label, StateId to) {
  check_state(from);
  check_state(to);
  if (label != kEpsilon && (label < 0 || label >= static_cast<int>(alphabet_.size())))
    throw Error("transition label index out of range");
  auto& edges = out_[from];
  std::pair<int, StateId> e{label, to};
  if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
}

void Nfa::set_initial(StateId s, bool on) {
  check_state(s);
  initial_[s] = on;
}

void Nfa::set_accepting(StateId s, bool on) {
  check_state(s);
  accepting_[s] = on;
}

StateSet Nfa::initial_states() const { return from_mask(initial_); }
StateSet Nfa::accepting_states() const { return from_mask(accepting_); }

std::vector<Nfa::Transition> Nfa::transitions() const {
  std::vector<Transition> all;
  for (StateId s = 0; s < out_.size(); ++s)
    for (auto [label, to] : out_[s]) all.push_back({s, label, to});
  return all;
}

bool Nfa::has_epsilon_transitions() const {
  for (const auto& edges : out_)
    for (const auto& e : edges)
      if (e.first == kEpsilon) return true;
  return false;
}

StateSet Nfa::epsilon_closure(StateSet states) const {
  std::vector<bool> seen(out_.size(), false);
  std::vector<StateId> stack;
  for (StateId s : states) {
    if (!seen[s]) {
      seen[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (auto [label, to] : out_[s]) {
      if (label == kEpsilon && !seen[to]) {
        seen[to] = true;
        stack.push_back(to);
      }
    }
  }
  return from_mask(seen);
}

StateSet Nfa::step(const StateSet& states, int x) const {
  StateSet next;
  for (StateId s : states)
    for (auto [label, to] : out_[s])
      if (label == x) next.push_back(to);
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  return epsilon_closure(std::move(next));
}

bool Nfa::any_accepting(const StateSet& states) const {
  return std::any_of(states.begin(), states.end(), [&](StateId s) { return accepting_[s]; });
}

Nfa from_words(const std::vector<Letter>& alphabet, const std::vector<Word>& words) {
  Nfa a(alphabet);
  StateId root = a.add_state();
  a.set_initial(root);
  std::map<std::pair<StateId, int>, StateId> trie;
  for (const auto& w : words) {
    StateId cur = root;
    for (const auto& x : w) {
      int idx = a.add_letter(x);
      auto it = trie.find({cur, idx});
      if (it == trie.end()) {
        StateId next = a.add_state();
        a.add_transition(cur, idx, next);
        it = trie.emplace(std::pair{cur, idx}, next).first;
      }
      cur = it->second;
    }
    a.set_accepting(cur);
  }
  return a;
}

Nfa single_letters(const std::vector<Letter>& letters) {
  std::vector<Word> words;
  for (const auto& x : letters) words.push_back({x});
  return from_words(letters, words);
}

Nfa letter_plus(const Letter& x) {
  Nfa a({x});
  StateId s = a.add_state();
  StateId t = a.add_state();
  a.set_initial(s);
  a.set_accepting(t);
  a.add_transition(s, x, t);
  a.add_transition(t, x, t);
  return a;
}

Nfa empty_language(const std::vector<Letter>& alphabet) {
  Nfa a(alphabet);
  a.set_initial(a.add_state());
  return a;
}

bool accepts(const Nfa& a, const Word& w) {
  StateSet cur = a.initial_closure();
  for (const auto& x : w) {
    auto idx = a.letter_index(x);
    if (!idx) return false;
    cur = a.step(cur, *idx);
    if (cur.empty()) return false;
  }
  return a.any_accepting(cur);
}

AcceptedWords::AcceptedWords(Nfa a) : nfa_(std::move(a)) {
  const std::size_t n = nfa_.state_count();
  const int k = static_cast<int>(nfa_.alphabet().size());
  delta_.assign(n, std::vector<StateSet>(k));
  for (StateId s = 0; s < n; ++s)
    for (int x = 0; x < k; ++x) delta_[s][x] = nfa_.step({s}, x);

  // co-reachability over the closed step relation
  coreachable_.assign(n, false);
  for (StateId s = 0; s < n; ++s) coreachable_[s] = nfa_.any_accepting(nfa_.epsilon_closure({s}));
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId s = 0; s < n; ++s) {
      if (coreachable_[s]) continue;
      for (int x = 0; x < k && !coreachable_[s]; ++x)
        for (StateId t : delta_[s][x])
          if (coreachable_[t]) {
            coreachable_[s] = true;
            changed = true;
            break;
          }
    }
  }
  restart();
}

void AcceptedWords::restart() {
  start_ = nfa_.initial_closure();
  reach_exact_ = start_;
  length_ = 0;
  in_length_ = false;
  exhausted_ = false;
  stack_.clear();
  prefix_.clear();
}

void AcceptedWords::ensure_exact_table(std::size_t r) {
  const std::size_t n = nfa_.state_count();
  const int k = static_cast<int>(nfa_.alphabet().size());
  if (accept_in_exactly_.empty()) {
    std::vector<bool> row(n);
    for (StateId s = 0; s < n; ++s) row[s] = nfa_.is_accepting(s);
    accept_in_exactly_.push_back(std::move(row));
  }
  while (accept_in_exactly_.size() <= r) {
    const auto& prev = accept_in_exactly_.back();
    std::vector<bool> row(n, false);
    for (StateId s = 0; s < n; ++s) {
      for (int x = 0; x < k && !row[s]; ++x)
        for (StateId t : delta_[s][x])
          if (prev[t]) {
            row[s] = true;
            break;
          }
    }
    accept_in_exactly_.push_back(std::move(row));
  }
}

// Sets handled here are always epsilon-closed, so exact-length acceptance can
// be read off the per-state table.
bool AcceptedWords::live(const StateSet& s, std::size_t remaining) {
  ensure_exact_table(remaining);
  const auto& row = accept_in_exactly_[remaining];
  return std::any_of(s.begin(), s.end(), [&](StateId q) { return row[q]; });
}

bool AcceptedWords::begin_length() {
  if (std::none_of(reach_exact_.begin(), reach_exact_.end(), [&](StateId q) { return coreachable_[q]; })) {
    exhausted_ = true;
    return false;
  }
  stack_.clear();
  prefix_.clear();
  if (live(start_, length_)) stack_.push_back({start_, 0});
  in_length_ = true;
  return true;
}

std::optional<Word> AcceptedWords::next() {
  const int k = static_cast<int>(nfa_.alphabet().size());
  while (!exhausted_) {
    if (!in_length_ && !begin_length()) return std::nullopt;
    while (!stack_.empty()) {
      Frame& top = stack_.back();
      const std::size_t depth = stack_.size() - 1;
      if (depth == length_) {
        Word w;
        w.reserve(prefix_.size());
        for (int x : prefix_) w.push_back(nfa_.alphabet()[x]);
        stack_.pop_back();
        if (!prefix_.empty()) prefix_.pop_back();
        return w;
      }
      if (top.next_letter >= k) {
        stack_.pop_back();
        if (!prefix_.empty()) prefix_.pop_back();
        continue;
      }
      int x = top.next_letter++;
      StateSet next;
      for (StateId s : top.states) {
        const auto& d = delta_[s][x];
        next.insert(next.end(), d.begin(), d.end());
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      if (!next.empty() && live(next, length_ - depth - 1)) {
        stack_.push_back({std::move(next), 0});
        prefix_.push_back(x);
      }
    }
    // advance to the next length
    StateSet reach;
    for (StateId s : reach_exact_)
      for (int x = 0; x < k; ++x) reach.insert(reach.end(), delta_[s][x].begin(), delta_[s][x].end());
    std::sort(reach.begin(), reach.end());
    reach.erase(std::unique(reach.begin(), reach.end()), reach.end());
    reach_exact_ = std::move(reach);
    ++length_;
    in_length_ = false;
  }
  return std::nullopt;
}

void for_each_accepted(const Nfa& a, std::size_t max_len, const std::function<bool(const Word&)>& visit) {
  AcceptedWords words(a);
  while (auto w = words.next()) {
    if (w->size() > max_len) return;
    if (!visit(*w)) return;
  }
}

std::vector<Word> enumerate(const Nfa& a, std::size_t max_len) {
  std::vector<Word> out;
  for_each_accepted(a, max_len, [&](const Word& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

namespace {

// Copies `src` into `dst`, remapping letters by display string. Returns the
// state offset.
StateId embed(Nfa& dst, const Nfa& src) {
  StateId offset = dst.state_count();
  for (StateId s = 0; s < src.state_count(); ++s) dst.add_state();
  for (StateId s = 0; s < src.state_count(); ++s) {
    for (auto [label, to] : src.out(s)) {
      int mapped = label == Nfa::kEpsilon ? Nfa::kEpsilon : *dst.letter_index(src.alphabet()[label]);
      dst.add_transition(offset + s, mapped, offset + to);
    }
  }
  return offset;
}

}  // namespace

Nfa union_of(const Nfa& a, const Nfa& b) {
  Nfa out(merged_alphabet(a, b));
  for (const Nfa* part : {&a, &b}) {
    StateId offset = embed(out, *part);
    for (StateId s : part->initial_states()) out.set_initial(offset + s);
    for (StateId s : part->accepting_states()) out.set_accepting(offset + s);
  }
  if (out.state_count() == 0) out.set_initial(out.add_state());
  return out;
}

Nfa concat(const Nfa& a, const Nfa& b) {
  Nfa out(merged_alphabet(a, b));
  StateId oa = embed(out, a);
  StateId ob = embed(out, b);
  for (StateId s : a.initial_states()) out.set_initial(oa + s);
  for (StateId s : b.accepting_states()) out.set_accepting(ob + s);
  for (StateId f : a.accepting_states())
    for (StateId i : b.initial_states()) out.add_epsilon(oa + f, ob + i);
  if (out.state_count() == 0) out.set_initial(out.add_state());
  return out;
}

Nfa intersect(const Nfa& a, const Nfa& b) {
  Nfa ea = remove_epsilon(a);
  Nfa eb = remove_epsilon(b);
  Nfa out(merged_alphabet(a, b));
  // label translation: a-index -> b-index
  std::vector<int> to_b(ea.alphabet().size(), -2);
  for (std::size_t x = 0; x < ea.alphabet().size(); ++x)
    if (auto j = eb.letter_index(ea.alphabet()[x])) to_b[x] = *j;

  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::deque<std::pair<StateId, StateId>> queue;
  auto intern = [&](StateId p, StateId q) {
    auto [it, inserted] = ids.try_emplace({p, q}, 0);
    if (inserted) {
      it->second = out.add_state();
      if (ea.is_accepting(p) && eb.is_accepting(q)) out.set_accepting(it->second);
      queue.emplace_back(p, q);
    }
    return it->second;
  };
  for (StateId p : ea.initial_states())
    for (StateId q : eb.initial_states()) out.set_initial(intern(p, q));
  if (out.state_count() == 0) out.set_initial(out.add_state());
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    StateId from = ids.at({p, q});
    for (auto [x, p2] : ea.out(p)) {
      if (to_b[x] < 0) continue;
      for (auto [y, q2] : eb.out(q))
        if (y == to_b[x]) out.add_transition(from, x, intern(p2, q2));
    }
  }
  return out;
}

Nfa image_hom(const Nfa& a, const LetterMap& phi, bool allow_erasing,
              std::optional<std::vector<Letter>> target_alphabet) {
  std::vector<Letter> letters;
  if (target_alphabet) {
    letters = *target_alphabet;
  } else {
    for (const auto& x : a.alphabet()) {
      auto it = phi.find(x);
      if (it == phi.end()) continue;
      for (const auto& y : it->second)
        if (std::find(letters.begin(), letters.end(), y) == letters.end()) letters.push_back(y);
    }
  }
  Nfa out(letters);
  std::vector<const Word*> images;
  for (const auto& x : a.alphabet()) {
    auto it = phi.find(x);
    if (it == phi.end()) throw Error("homomorphism is not defined on letter '" + x.name() + "'");
    if (it->second.empty() && !allow_erasing)
      throw Error("homomorphism erases letter '" + x.name() + "' but erasing is not allowed");
    for (const auto& y : it->second)
      if (!out.letter_index(y)) throw Error("image letter '" + y.name() + "' is not in the target alphabet");
    images.push_back(&it->second);
  }
  for (StateId s = 0; s < a.state_count(); ++s) out.add_state();
  for (StateId s = 0; s < a.state_count(); ++s) {
    if (a.is_initial(s)) out.set_initial(s);
    if (a.is_accepting(s)) out.set_accepting(s);
    for (auto [label, to] : a.out(s)) {
      if (label == Nfa::kEpsilon) {
        out.add_epsilon(s, to);
        continue;
      }
      const Word& image = *images[label];
      if (image.empty()) {
        out.add_epsilon(s, to);
        continue;
      }
      StateId cur = s;
      for (std::size_t i = 0; i < image.size(); ++i) {
        StateId next = i + 1 == image.size() ? to : out.add_state();
        out.add_transition(cur, image[i], next);
        cur = next;
      }
    }
  }
  if (out.state_count() == 0) out.set_initial(out.add_state());
  return out;
}

Nfa inverse_letter_hom(const Nfa& a, const LetterRelabel& h, const std::vector<Letter>& domain) {
  Nfa out(domain);
  // preimages of each letter index of `a`
  std::vector<std::vector<int>> pre(a.alphabet().size());
  for (std::size_t d = 0; d < domain.size(); ++d) {
    auto it = h.find(domain[d]);
    if (it == h.end()) throw Error("letter map is not defined on '" + domain[d].name() + "'");
    if (auto idx = a.letter_index(it->second)) pre[*idx].push_back(static_cast<int>(d));
  }
  for (StateId s = 0; s < a.state_count(); ++s) out.add_state();
  for (StateId s = 0; s < a.state_count(); ++s) {
    if (a.is_initial(s)) out.set_initial(s);
    if (a.is_accepting(s)) out.set_accepting(s);
    for (auto [label, to] : a.out(s)) {
      if (label == Nfa::kEpsilon) {
        out.add_epsilon(s, to);
      } else {
        for (int d : pre[label]) out.add_transition(s, d, to);
      }
    }
  }
  if (out.state_count() == 0) out.set_initial(out.add_state());
  return out;
}

Nfa subtract_word(const Nfa& a, const Word& w) {
  Nfa ea = remove_epsilon(a);
  const std::size_t n = w.size();
  const std::size_t off = n + 1;
  std::vector<int> expected(n, -2);
  for (std::size_t i = 0; i < n; ++i)
    if (auto idx = ea.letter_index(w[i])) expected[i] = *idx;
  auto step = [&](std::size_t t, int label) -> std::size_t {
    if (t < n && expected[t] == label) return t + 1;
    return off;
  };
  auto accept = [&](StateId p, std::size_t t) { return ea.is_accepting(p) && t != n; };
  return product_with_tracker(ea, 0, step, accept);
}

Nfa trim(const Nfa& a) {
  const std::size_t n = a.state_count();
  std::vector<bool> fwd(n, false), bwd(n, false);
  std::vector<std::vector<StateId>> rev(n);
  std::vector<StateId> stack;
  for (StateId s = 0; s < n; ++s) {
    for (auto [label, to] : a.out(s)) rev[to].push_back(s);
    if (a.is_initial(s)) {
      fwd[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (auto [label, to] : a.out(s))
      if (!fwd[to]) {
        fwd[to] = true;
        stack.push_back(to);
      }
  }
  for (StateId s = 0; s < n; ++s)
    if (a.is_accepting(s)) {
      bwd[s] = true;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId p : rev[s])
      if (!bwd[p]) {
        bwd[p] = true;
        stack.push_back(p);
      }
  }
  Nfa out(a.alphabet());
  std::vector<StateId> map(n, n);
  for (StateId s = 0; s < n; ++s)
    if (fwd[s] && bwd[s]) map[s] = out.add_state();
  for (StateId s = 0; s < n; ++s) {
    if (map[s] == n) continue;
    if (a.is_initial(s)) out.set_initial(map[s]);
    if (a.is_accepting(s)) out.set_accepting(map[s]);
    for (auto [label, to] : a.out(s))
      if (map[to] != n) out.add_transition(map[s], label, map[to]);
  }
  if (out.state_count() == 0) out.set_initial(out.add_state());
  return out;
}

Nfa normalize_no_accepting_initial(const Nfa& a) {
  if (a.any_accepting(a.initial_closure()))
    throw Error("cannot normalize: the automaton accepts the empty word");
  Nfa ea = remove_epsilon(a);
  Nfa out(ea.alphabet());
  StateId start = out.add_state();
  out.set_initial(start);
  for (StateId s = 0; s < ea.state_count(); ++s) {
    StateId t = out.add_state();
    if (ea.is_accepting(s)) out.set_accepting(t);
  }
  for (StateId s = 0; s < ea.state_count(); ++s) {
    for (auto [label, to] : ea.out(s)) {
      out.add_transition(s + 1, label, to + 1);
      if (ea.is_initial(s)) out.add_transition(start, label, to + 1);
    }
  }
  Nfa trimmed = trim(out);
  // trim keeps the fresh start as the only initial state unless the language
  // is empty, in which case a lone non-accepting initial state remains
  return trimmed;
}

bool is_empty(const Nfa& a) {
  std::vector<bool> seen(a.state_count(), false);
  std::vector<StateId> stack;
  for (StateId s : a.initial_states()) {
    seen[s] = true;
    stack.push_back(s);
  }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    if (a.is_accepting(s)) return false;
    for (auto [label, to] : a.out(s))
      if (!seen[to]) {
        seen[to] = true;
        stack.push_back(to);
      }
  }
  return true;
}

}  // namespace epic::automata
