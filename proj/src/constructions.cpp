#include "epic/constructions.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace epic::constructions {

namespace {

std::vector<Letter> ordered_union(const std::vector<Letter>& a, const std::vector<Letter>& b) {
  std::vector<Letter> out = a;
  for (const auto& x : b) {
    if (std::find(a.begin(), a.end(), x) != a.end())
      throw Error("alphabets are not disjoint: letter '" + x.name() + "' occurs in both");
    out.push_back(x);
  }
  return out;
}

Word lifted(const LetterMap& lift, const groups::GroupOracle& oracle, const Letter& x) {
  if (auto it = lift.find(x); it != lift.end()) return it->second;
  if (!oracle.has_letter(x))
    throw Error("letter '" + x.name() + "' has no lift and is not a generator of the ambient group");
  return Word{x};
}

LetterMap lift_all(const Demonstration& d, const LetterMap& lift, const groups::GroupOracle& oracle) {
  LetterMap out;
  for (const auto& x : d.language().alphabet()) out[x] = lifted(lift, oracle, x);
  return out;
}

Word lift_word(const LetterMap& lift, const Word& w) {
  Word out;
  for (const auto& x : w) {
    const Word& image = lift.at(x);
    out.insert(out.end(), image.begin(), image.end());
  }
  return out;
}

}  // namespace

// ------------------------------------------------------------ generating sets

Demonstration change_generators(const Demonstration& d, const std::vector<Letter>& target_alphabet,
                                const LetterMap& target_eval, const LetterMap& phi) {
  const auto& oracle = *d.oracle();
  LetterMap eval;
  for (const auto& y : target_alphabet) {
    auto it = target_eval.find(y);
    eval[y] = it != target_eval.end() ? it->second : Word{y};
  }

  const bool trivial = std::all_of(oracle.alphabet().begin(), oracle.alphabet().end(),
                                   [&](const Letter& x) { return oracle.is_identity({x}); });
  if (trivial) return Demonstration(d.oracle(), eval, automata::empty_language(target_alphabet));

  for (const auto& x : d.language().alphabet()) {
    auto it = phi.find(x);
    if (it == phi.end()) throw Error("no image given for letter '" + x.name() + "'");
    if (it->second.empty()) throw Error("letter '" + x.name() + "' must not map to the empty word");
    Word via_target;
    for (const auto& y : it->second) {
      auto e = eval.find(y);
      if (e == eval.end()) throw Error("image letter '" + y.name() + "' is not in the target alphabet");
      via_target.insert(via_target.end(), e->second.begin(), e->second.end());
    }
    if (oracle.evaluate(via_target) != d.evaluate({x}))
      throw Error("image of letter '" + x.name() + "' represents a different element");
  }
  Nfa lang = automata::image_hom(d.language(), phi, false, target_alphabet);
  return Demonstration(d.oracle(), std::move(eval), std::move(lang));
}

LetterMap find_generator_images(const Demonstration& d, const std::vector<Letter>& target_alphabet,
                                const LetterMap& target_eval, std::size_t max_len) {
  const auto& oracle = *d.oracle();
  std::map<groups::ElementKey, std::vector<Letter>> wanted;
  for (const auto& x : d.language().alphabet()) wanted[d.evaluate({x})].push_back(x);

  auto eval_letter = [&](const Letter& y) {
    auto it = target_eval.find(y);
    return it != target_eval.end() ? it->second : Word{y};
  };
  LetterMap phi;
  // breadth first over target words; every word is kept since the target
  // letters need not be inverse closed
  std::vector<Word> frontier{Word{}};
  for (std::size_t len = 1; len <= max_len && !wanted.empty(); ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (const auto& y : target_alphabet) {
        Word v = w;
        v.push_back(y);
        Word oracle_word;
        for (const auto& z : v) {
          Word e = eval_letter(z);
          oracle_word.insert(oracle_word.end(), e.begin(), e.end());
        }
        auto it = wanted.find(oracle.evaluate(oracle_word));
        if (it != wanted.end()) {
          for (const auto& x : it->second) phi[x] = v;
          wanted.erase(it);
        }
        next.push_back(std::move(v));
      }
    }
    frontier = std::move(next);
  }
  if (!wanted.empty())
    throw Error("no target word of length <= " + std::to_string(max_len) + " represents letter '" +
                wanted.begin()->second.front().name() + "'");
  return phi;
}

// ------------------------------------------------------------ extensions

Demonstration extension(const Demonstration& dN, const Demonstration& dQ, OraclePtr oracle_e,
                        const WordPredicate& in_n, const LetterMap& lift) {
  if (!oracle_e) throw Error("extension needs the oracle of the extension group");
  ordered_union(dN.language().alphabet(), dQ.language().alphabet());
  LetterMap eval = lift_all(dN, lift, *oracle_e);
  for (auto& [x, w] : lift_all(dQ, lift, *oracle_e)) eval[x] = w;

  for (const auto& x : dN.language().alphabet())
    if (!in_n(eval.at(x))) throw Error("normal subgroup letter '" + x.name() + "' does not evaluate into N");
  for (const auto& x : dQ.language().alphabet())
    if (in_n(eval.at(x))) throw Error("quotient letter '" + x.name() + "' evaluates into N");

  Nfa lang = automata::union_of(automata::union_of(dN.language(), dQ.language()),
                                automata::concat(dN.language(), dQ.language()));
  return Demonstration(std::move(oracle_e), std::move(eval), std::move(lang));
}

std::vector<std::string> check_extension_inputs(const Demonstration& dN, const Demonstration& dQ,
                                                const groups::GroupOracle& oracle_e, const WordPredicate& in_n,
                                                const LetterMap& lift, std::size_t max_len) {
  std::vector<std::string> problems;
  const LetterMap n_lift = lift_all(dN, lift, oracle_e);
  const LetterMap q_lift = lift_all(dQ, lift, oracle_e);
  automata::for_each_accepted(dN.language(), max_len, [&](const Word& w) {
    Word e = lift_word(n_lift, w);
    if (!in_n(e)) problems.push_back("N word '" + to_string(w) + "' leaves N");
    if (oracle_e.is_identity(e)) problems.push_back("N word '" + to_string(w) + "' is the identity");
    return true;
  });
  automata::for_each_accepted(dQ.language(), max_len, [&](const Word& w) {
    if (in_n(lift_word(q_lift, w))) problems.push_back("Q word '" + to_string(w) + "' evaluates into N");
    return true;
  });
  return problems;
}

Demonstration fi_overgroup(const Demonstration& dG, OraclePtr oracle_h, const LetterMap& transversal,
                           const WordPredicate& in_g, const LetterMap& lift) {
  if (!oracle_h) throw Error("finite index overgroup needs the oracle of the overgroup");
  if (transversal.empty()) throw Error("transversal has no non-identity representatives");
  std::vector<Letter> t_letters;
  for (const auto& [t, w] : transversal) {
    for (const auto& y : w)
      if (!oracle_h->has_letter(y)) throw Error("transversal word uses unknown generator '" + y.name() + "'");
    if (in_g(w)) throw Error("transversal letter '" + t.name() + "' evaluates into the subgroup");
    t_letters.push_back(t);
  }
  ordered_union(dG.language().alphabet(), t_letters);
  LetterMap eval = lift_all(dG, lift, *oracle_h);
  for (const auto& [t, w] : transversal) eval[t] = w;

  Nfa reps = automata::single_letters(t_letters);
  Nfa lang = automata::union_of(automata::union_of(dG.language(), reps), automata::concat(dG.language(), reps));
  return Demonstration(std::move(oracle_h), std::move(eval), std::move(lang));
}

// ------------------------------------------------------------ coset tables

CosetTable::CosetTable(std::vector<std::string> cosets, std::vector<Letter> generators,
                       std::vector<Word> representatives, const std::vector<Action>& actions)
    : names_(std::move(cosets)), generators_(std::move(generators)), reps_(std::move(representatives)) {
  const std::size_t n = names_.size();
  const std::size_t k = generators_.size();
  if (n == 0) throw Error("coset table has no cosets");
  if (reps_.size() != n) throw Error("coset table needs one representative per coset");
  if (!reps_[0].empty()) throw Error("the subgroup coset must be represented by the empty word");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (names_[i] == names_[j]) throw Error("coset '" + names_[i] + "' declared twice");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (generators_[i] == generators_[j]) throw Error("generator '" + generators_[i].name() + "' repeats");

  action_.assign(n, std::vector<std::size_t>(k, n));
  for (const auto& a : actions) {
    std::size_t from = index(a.from);
    std::size_t to = index(a.to);
    std::size_t x = generator_index(a.generator);
    if (action_[from][x] != n && action_[from][x] != to)
      throw Error("inconsistent coset table: " + a.from + " " + a.generator.name() + " has two targets");
    action_[from][x] = to;
  }
  for (std::size_t x = 0; x < k; ++x) {
    std::vector<bool> hit(n, false);
    for (std::size_t c = 0; c < n; ++c) {
      if (action_[c][x] == n)
        throw Error("inconsistent coset table: no action for " + names_[c] + " " + generators_[x].name());
      if (hit[action_[c][x]])
        throw Error("inconsistent coset table: generator " + generators_[x].name() + " does not act bijectively");
      hit[action_[c][x]] = true;
    }
  }
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    std::size_t c = stack.back();
    stack.pop_back();
    for (std::size_t x = 0; x < k; ++x)
      if (!seen[action_[c][x]]) {
        seen[action_[c][x]] = true;
        stack.push_back(action_[c][x]);
      }
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (!seen[c]) throw Error("inconsistent coset table: coset " + names_[c] + " is unreachable");
    if (trace(reps_[c]) != c)
      throw Error("inconsistent coset table: representative of " + names_[c] + " leads elsewhere");
  }
}

std::size_t CosetTable::index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw Error("unknown coset '" + name + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

std::size_t CosetTable::generator_index(const Letter& x) const {
  auto it = std::find(generators_.begin(), generators_.end(), x);
  if (it == generators_.end()) throw Error("'" + x.name() + "' is not a generator of the coset table");
  return static_cast<std::size_t>(it - generators_.begin());
}

std::size_t CosetTable::act(std::size_t coset, const Letter& x) const {
  return action_.at(coset).at(generator_index(x));
}

std::size_t CosetTable::trace(const Word& w) const {
  std::size_t c = 0;
  for (const auto& x : w) c = act(c, x);
  return c;
}

std::vector<CosetTable::Action> CosetTable::actions() const {
  std::vector<Action> out;
  for (std::size_t c = 0; c < size(); ++c)
    for (std::size_t x = 0; x < generators_.size(); ++x) out.push_back({names_[c], generators_[x], names_[action_[c][x]]});
  return out;
}

CosetTable CosetTable::from_permutation_group(const groups::PermutationOracle& g,
                                              const std::vector<Word>& subgroup_generators) {
  using Perm = groups::PermutationOracle::Permutation;
  auto compose = [](const Perm& p, const Perm& q) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
    return r;
  };
  std::vector<Perm> gens;
  for (const auto& w : subgroup_generators) gens.push_back(g.permutation_of(w));
  std::set<Perm> subgroup{g.permutation_of({})};
  std::deque<Perm> queue{g.permutation_of({})};
  while (!queue.empty()) {
    Perm p = queue.front();
    queue.pop_front();
    for (const auto& s : gens) {
      Perm q = compose(p, s);
      if (subgroup.insert(q).second) queue.push_back(q);
    }
  }
  auto canonical = [&](const Perm& p) {
    Perm best;
    for (const auto& h : subgroup) {
      Perm c = compose(h, p);
      if (best.empty() || c < best) best = c;
    }
    return best;
  };

  std::map<Perm, std::size_t> ids;
  std::vector<Perm> elements{g.permutation_of({})};
  std::vector<Word> reps{Word{}};
  std::vector<std::string> names{"H"};
  ids[canonical(elements[0])] = 0;
  std::vector<Action> actions;
  for (std::size_t c = 0; c < elements.size(); ++c) {
    for (const auto& x : g.alphabet()) {
      Perm next = compose(elements[c], g.generator(x));
      auto [it, inserted] = ids.try_emplace(canonical(next), elements.size());
      if (inserted) {
        elements.push_back(next);
        Word rep = reps[c];
        rep.push_back(x);
        reps.push_back(rep);
        names.push_back("C" + std::to_string(names.size()));
      }
      actions.push_back({names[c], x, names[it->second]});
    }
  }
  return CosetTable(names, g.alphabet(), reps, actions);
}

Letter edge_letter(const std::string& from, const Letter& x, const std::string& to) {
  return Letter("[" + from + "," + x.name() + "," + to + "]");
}

Demonstration fi_subgroup(const Demonstration& dG, const CosetTable& table) {
  const auto& oracle = *dG.oracle();
  if (!dG.has_identity_eval_map())
    throw Error("finite index subgroup construction needs a language over the group generators");
  for (const auto& x : dG.language().alphabet())
    if (std::find(table.generators().begin(), table.generators().end(), x) == table.generators().end())
      throw Error("language letter '" + x.name() + "' is not a generator of the coset table");

  // formal inverses found by evaluation
  LetterMap inverse;
  for (const auto& x : table.generators()) {
    if (!oracle.has_letter(x)) throw Error("coset table generator '" + x.name() + "' is not a group generator");
    for (const auto& y : oracle.alphabet())
      if (oracle.is_identity({x, y})) {
        inverse[x] = {y};
        break;
      }
    if (!inverse.count(x)) throw Error("generating set is not inverse closed: no inverse for '" + x.name() + "'");
  }
  auto inverse_word = [&](const Word& w) {
    Word out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse.at(*it).front());
    return out;
  };

  std::vector<Letter> edges;
  automata::LetterRelabel label;
  LetterMap eval;
  const std::size_t n = table.size();
  Nfa paths;
  automata::StateId start = paths.add_state();
  paths.set_initial(start);
  for (std::size_t c = 0; c < n; ++c) paths.add_state();
  paths.set_accepting(1);  // coset H, reached after at least one edge
  for (std::size_t c = 0; c < n; ++c) {
    for (const auto& x : table.generators()) {
      std::size_t d = table.act(c, x);
      Letter e = edge_letter(table.name(c), x, table.name(d));
      edges.push_back(e);
      label[e] = x;
      eval[e] = concat(concat(table.representative(c), Word{x}), inverse_word(table.representative(d)));
      int idx = paths.add_letter(e);
      paths.add_transition(c + 1, idx, d + 1);
      if (c == 0) paths.add_transition(start, idx, d + 1);
    }
  }
  Nfa pullback = automata::inverse_letter_hom(dG.language(), label, edges);
  Nfa lang = automata::trim(automata::intersect(paths, pullback));
  // keep the full edge alphabet so the evaluation map and language agree
  Nfa full(edges);
  for (automata::StateId s = 0; s < lang.state_count(); ++s) full.add_state();
  for (automata::StateId s = 0; s < lang.state_count(); ++s) {
    if (lang.is_initial(s)) full.set_initial(s);
    if (lang.is_accepting(s)) full.set_accepting(s);
    for (auto [x, t] : lang.out(s)) full.add_transition(s, lang.alphabet()[x], t);
  }
  Demonstration out(dG.oracle(), std::move(eval), std::move(full));
  out.set_subgroup({"subgroup of index " + std::to_string(n), [table](const Word& w) { return table.in_subgroup(w); }});
  return out;
}

// ------------------------------------------------------------ cross sections

Letter triple_letter(const std::optional<Letter>& a, const std::optional<Letter>& b, const std::optional<Letter>& c) {
  if (!a && !b && !c) throw Error("(#,#,#) is not a letter of the trinary extension");
  auto part = [](const std::optional<Letter>& x) { return x ? x->name() : kPadding; };
  for (const auto* x : {&a, &b, &c})
    if (*x && ((*x)->name().find('|') != std::string::npos || (*x)->name() == kPadding))
      throw Error("letter '" + (*x)->name() + "' cannot be used inside a triple");
  return Letter("(" + part(a) + "|" + part(b) + "|" + part(c) + ")");
}

std::array<std::optional<Letter>, 3> parse_triple(const Letter& t) {
  const std::string& s = t.name();
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw Error("'" + s + "' is not a triple letter");
  std::string body = s.substr(1, s.size() - 2);
  std::array<std::optional<Letter>, 3> out;
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    std::size_t bar = body.find('|', pos);
    if ((i < 2) != (bar != std::string::npos)) throw Error("'" + s + "' is not a triple letter");
    std::string part = body.substr(pos, i < 2 ? bar - pos : std::string::npos);
    if (part.empty()) throw Error("'" + s + "' has an empty coordinate");
    if (part != kPadding) out[i] = Letter(part);
    pos = bar + 1;
  }
  if (!out[0] && !out[1] && !out[2]) throw Error("(#,#,#) is not a letter of the trinary extension");
  return out;
}

Word trinary_projection(const Word& u, const Word& v, const Word& w) {
  std::size_t k = std::max({u.size(), v.size(), w.size()});
  Word out;
  auto at = [](const Word& x, std::size_t i) { return i < x.size() ? std::optional<Letter>(x[i]) : std::nullopt; };
  for (std::size_t i = 0; i < k; ++i) out.push_back(triple_letter(at(u, i), at(v, i), at(w, i)));
  return out;
}

bool satisfies_padding(const Nfa& triples) {
  // tracker: bit i set once coordinate i has been padded; 8 means invalid
  std::vector<std::array<bool, 3>> padded;
  for (const auto& t : triples.alphabet()) {
    auto parts = parse_triple(t);
    padded.push_back({!parts[0], !parts[1], !parts[2]});
  }
  constexpr unsigned kInvalid = 8;
  std::set<std::pair<automata::StateId, unsigned>> seen;
  std::vector<std::pair<automata::StateId, unsigned>> stack;
  for (auto s : triples.initial_states())
    if (seen.insert({s, 0}).second) stack.emplace_back(s, 0);
  while (!stack.empty()) {
    auto [s, mask] = stack.back();
    stack.pop_back();
    if (mask == kInvalid && triples.is_accepting(s)) return false;
    for (auto [x, t] : triples.out(s)) {
      unsigned next = mask;
      if (x != Nfa::kEpsilon && mask != kInvalid) {
        next = 0;
        for (unsigned i = 0; i < 3; ++i) {
          if ((mask >> i & 1U) && !padded[x][i]) next = kInvalid;
          if (next != kInvalid && padded[x][i]) next |= 1U << i;
        }
      }
      if (seen.insert({t, next}).second) stack.emplace_back(t, next);
    }
  }
  return true;
}

Nfa autostackable_projection(const Nfa& triples) {
  if (!satisfies_padding(triples)) throw Error("triple automaton accepts an invalidly padded word");
  LetterMap first;
  std::vector<Letter> padded_alphabet;
  std::vector<Letter> plain_alphabet;
  for (const auto& t : triples.alphabet()) {
    auto parts = parse_triple(t);
    Letter head = parts[0] ? *parts[0] : Letter(kPadding);
    first[t] = {head};
    if (std::find(padded_alphabet.begin(), padded_alphabet.end(), head) == padded_alphabet.end())
      padded_alphabet.push_back(head);
    if (parts[0] && std::find(plain_alphabet.begin(), plain_alphabet.end(), head) == plain_alphabet.end())
      plain_alphabet.push_back(head);
  }
  Nfa projected = automata::image_hom(triples, first, false, padded_alphabet);
  LetterMap erase;
  for (const auto& x : padded_alphabet) erase[x] = x.name() == kPadding ? Word{} : Word{x};
  return automata::image_hom(projected, erase, true, plain_alphabet);
}

Demonstration cross_section_to_demo(const Nfa& normal_forms, OraclePtr oracle, const Word& identity_rep) {
  if (!oracle) throw Error("cross section needs a group oracle");
  if (!automata::accepts(normal_forms, identity_rep))
    throw Error("identity representative '" + to_string(identity_rep) + "' is not accepted");
  if (!oracle->is_identity(identity_rep))
    throw Error("identity representative '" + to_string(identity_rep) + "' does not evaluate to the identity");
  return Demonstration::identity_mapped(std::move(oracle), automata::subtract_word(normal_forms, identity_rep));
}

}  // namespace epic::constructions
