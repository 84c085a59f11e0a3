#include <algorithm>
#include <deque>
#include <map>

#include "epic/constructions.hpp"

namespace epic::constructions {

namespace {

// State of the admissible automaton after reading a prefix.
//   blocked[v]: v occurred and every later letter commutes with v, so another
//               v could be shuffled back onto it.
//   pending[a]: some earlier letter b with a < b commutes with a, and every
//               letter since b commutes with a; reading a now would let it
//               move in front of b, giving a lexicographically smaller
//               string of the same shuffle class.
struct TypeState {
  std::optional<std::size_t> last;
  std::vector<bool> blocked;
  std::vector<bool> pending;

  auto operator<=>(const TypeState&) const = default;
};

std::optional<TypeState> read(const VertexGraph& g, const TypeState& s, std::size_t x) {
  if (s.blocked[x] || s.pending[x]) return std::nullopt;
  TypeState t;
  t.last = x;
  t.blocked.resize(g.size());
  t.pending.resize(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (v == x) {
      t.blocked[v] = true;
      t.pending[v] = false;
    } else if (g.adjacent(v, x)) {
      t.blocked[v] = s.blocked[v];
      t.pending[v] = s.pending[v] || x > v;
    } else {
      t.blocked[v] = false;
      t.pending[v] = false;
    }
  }
  return t;
}

}  // namespace

AdmissibleAutomaton admissible_automaton(const VertexGraph& g) {
  std::vector<Letter> letters;
  for (const auto& name : g.names()) letters.emplace_back(name);
  AdmissibleAutomaton out{Nfa(letters), {}};

  std::map<TypeState, automata::StateId> ids;
  std::deque<TypeState> queue;
  auto intern = [&](const TypeState& s) {
    auto [it, inserted] = ids.try_emplace(s, 0);
    if (inserted) {
      it->second = out.nfa.add_state();
      out.state_vertex.push_back(s.last);
      if (s.last) out.nfa.set_accepting(it->second);
      queue.push_back(s);
    }
    return it->second;
  };
  TypeState start{std::nullopt, std::vector<bool>(g.size(), false), std::vector<bool>(g.size(), false)};
  out.nfa.set_initial(intern(start));
  while (!queue.empty()) {
    TypeState s = queue.front();
    queue.pop_front();
    automata::StateId from = ids.at(s);
    for (std::size_t x = 0; x < g.size(); ++x)
      if (auto t = read(g, s, x)) out.nfa.add_transition(from, static_cast<int>(x), intern(*t));
  }
  return out;
}

Demonstration graph_product(const VertexGraph& g, const std::vector<Demonstration>& local) {
  if (local.size() != g.size()) throw Error("graph product needs one demonstration per vertex");
  std::vector<OraclePtr> oracles;
  std::vector<Letter> letters;
  LetterMap eval;
  std::vector<Nfa> parts;
  for (std::size_t v = 0; v < g.size(); ++v) {
    oracles.push_back(local[v].oracle());
    for (const auto& x : local[v].language().alphabet()) {
      if (std::find(letters.begin(), letters.end(), x) != letters.end())
        throw Error("alphabet collision: letter '" + x.name() + "' is used by two vertex demonstrations");
      letters.push_back(x);
    }
    for (const auto& [x, w] : local[v].eval_map()) eval[x] = w;
    if (automata::accepts(local[v].language(), {}))
      throw Error("demonstration for vertex '" + g.name(v) + "' accepts the empty word");
    parts.push_back(automata::normalize_no_accepting_initial(local[v].language()));
  }
  auto oracle = std::make_shared<groups::GraphProductOracle>(g, std::move(oracles));

  AdmissibleAutomaton adm = admissible_automaton(g);
  Nfa glued(letters);
  automata::StateId start = glued.add_state();
  glued.set_initial(start);

  // copy of the vertex automaton for each labelled admissible state
  struct Copy {
    automata::StateId offset = 0;
    const Nfa* part = nullptr;
  };
  std::vector<Copy> copies(adm.nfa.state_count());
  for (automata::StateId p = 0; p < adm.nfa.state_count(); ++p) {
    if (!adm.state_vertex[p]) continue;
    const Nfa& part = parts[*adm.state_vertex[p]];
    Copy c{glued.state_count(), &part};
    for (automata::StateId s = 0; s < part.state_count(); ++s) {
      automata::StateId t = glued.add_state();
      if (part.is_accepting(s)) glued.set_accepting(t);
    }
    for (automata::StateId s = 0; s < part.state_count(); ++s)
      for (auto [x, t] : part.out(s)) glued.add_transition(c.offset + s, part.alphabet()[x], c.offset + t);
    copies[p] = c;
  }
  auto entry = [&](automata::StateId q) {
    const Copy& c = copies[q];
    return c.offset + c.part->initial_states().front();
  };
  for (automata::StateId p = 0; p < adm.nfa.state_count(); ++p) {
    for (auto [x, q] : adm.nfa.out(p)) {
      if (!adm.state_vertex[p]) {
        glued.add_epsilon(start, entry(q));
        continue;
      }
      const Copy& c = copies[p];
      for (automata::StateId f : c.part->accepting_states()) glued.add_epsilon(c.offset + f, entry(q));
    }
  }
  return Demonstration(std::move(oracle), std::move(eval), automata::trim(glued));
}

}  // namespace epic::constructions
