#include "epic/workspace.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "epic/graph_product.hpp"

namespace epic::cli {

using automata::Nfa;
using groups::OraclePtr;

// ------------------------------------------------------------ workspace

namespace {

template <typename Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& name, const char* kind) {
  auto it = m.find(name);
  if (it == m.end()) throw Error(std::string("unknown ") + kind + " '" + name + "'");
  return it->second;
}

template <typename Map, typename Value>
void insert(Map& m, std::vector<std::string>& order, const std::string& name, Value v, const char* kind) {
  if (m.count(name)) throw Error(std::string("duplicate ") + kind + " '" + name + "'");
  m.emplace(name, std::move(v));
  order.push_back(name);
}

}  // namespace

const OraclePtr& Workspace::group(const std::string& name) const { return lookup(groups, name, "group"); }
const Nfa& Workspace::automaton(const std::string& name) const { return lookup(automata, name, "automaton"); }
const TableEntry& Workspace::table(const std::string& name) const { return lookup(tables, name, "coset table"); }
const wp::Presentation& Workspace::presentation(const std::string& name) const {
  return lookup(presentations, name, "presentation");
}
const demo::Demonstration& Workspace::demonstration(const std::string& name) const {
  const auto& e = lookup(demos, name, "demonstration");
  if (!e.demo) throw Error("demonstration '" + name + "' is not linked");
  return *e.demo;
}

void Workspace::add_group(const std::string& name, OraclePtr g) { insert(groups, group_order, name, std::move(g), "group"); }
void Workspace::add_automaton(const std::string& name, Nfa a) {
  insert(automata, automaton_order, name, std::move(a), "automaton");
}
void Workspace::add_demo(const std::string& name, DemoEntry d) {
  insert(demos, demo_order, name, std::move(d), "demonstration");
}
void Workspace::add_table(const std::string& name, TableEntry t) {
  insert(tables, table_order, name, std::move(t), "coset table");
}
void Workspace::add_presentation(const std::string& name, wp::Presentation p) {
  insert(presentations, presentation_order, name, std::move(p), "presentation");
}

std::optional<std::string> Workspace::name_of(const groups::GroupOracle* g) const {
  for (const auto& name : group_order)
    if (groups.at(name).get() == g) return name;
  return std::nullopt;
}

Workspace Workspace::closure_of_demo(const std::string& name) const {
  Workspace out;
  const DemoEntry& e = lookup(demos, name, "demonstration");
  std::function<void(const std::string&)> add_group_rec = [&](const std::string& g) {
    if (out.groups.count(g)) return;
    const OraclePtr& o = group(g);
    if (auto gp = std::dynamic_pointer_cast<const groups::GraphProductOracle>(o)) {
      for (std::size_t v = 0; v < gp->graph().size(); ++v)
        if (auto n = name_of(gp->vertex_group(v).get())) add_group_rec(*n);
    }
    out.add_group(g, o);
  };
  if (e.builtin) {
    std::istringstream in(*e.builtin);
    std::string kind, arg;
    in >> kind >> arg;
    if (kind == "finite") add_group_rec(arg);
  } else {
    add_group_rec(e.group);
    out.add_automaton(e.automaton, automaton(e.automaton));
    if (e.subgroup) {
      const TableEntry& t = table(*e.subgroup);
      add_group_rec(t.group);
      out.add_table(*e.subgroup, t);
    }
  }
  out.add_demo(name, e);
  return out;
}

// ------------------------------------------------------------ builtins

demo::Demonstration make_builtin(const std::string& desc, const Workspace& w) {
  std::istringstream in(desc);
  std::string kind;
  in >> kind;
  auto rank = [&]() {
    long long k = -1;
    if (!(in >> k) || k < 1) throw Error("builtin '" + kind + "' needs a positive rank");
    return static_cast<std::size_t>(k);
  };
  std::optional<demo::Demonstration> d;
  if (kind == "z") {
    d = demo::z_demo();
  } else if (kind == "free") {
    d = demo::free_demo(rank());
  } else if (kind == "zk") {
    d = demo::zk_demo(rank());
  } else if (kind == "finite") {
    std::string g;
    if (!(in >> g)) throw Error("builtin 'finite' needs a permutation group name");
    auto perm = std::dynamic_pointer_cast<const groups::PermutationOracle>(w.group(g));
    if (!perm) throw Error("builtin 'finite' needs a permutation group, '" + g + "' is not one");
    d = demo::finite_demo(perm);
  } else {
    throw Error("unknown builtin demonstration '" + kind + "'");
  }
  std::string extra;
  if (in >> extra) throw Error("unexpected '" + extra + "' after builtin " + kind);
  return *d;
}

// ------------------------------------------------------------ parsing

namespace {

struct Line {
  std::size_t number = 0;
  std::string text;                 // comment stripped
  std::vector<std::string> tokens;  // whitespace split
};

std::string strip_comment(const std::string& s) {
  std::size_t first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos || s[first] == '#') return {};
  // a '#' standing alone as a token starts a trailing comment; "#pad" does not
  for (std::size_t i = first; i < s.size(); ++i) {
    if (s[i] != '#') continue;
    bool before = std::isspace(static_cast<unsigned char>(s[i - 1]));
    bool after = i + 1 == s.size() || std::isspace(static_cast<unsigned char>(s[i + 1]));
    if (before && after) return s.substr(0, i);
  }
  return s;
}

std::vector<std::string> split(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

struct Block {
  std::string source;
  Line header;
  std::vector<Line> body;

  [[noreturn]] void fail(const Line& l, const std::string& msg) const {
    throw LoadError(source + ":" + std::to_string(l.number) + ": " + msg);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(header, msg); }
  const std::string& kind() const { return header.tokens[0]; }
  const std::string& name() const { return header.tokens[1]; }
};

std::vector<Block> split_blocks(const std::string& text, const std::string& source) {
  std::vector<Block> blocks;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  bool open = false;
  for (; std::getline(in, raw);) {
    ++number;
    Line l{number, strip_comment(raw), {}};
    l.tokens = split(l.text);
    if (l.tokens.empty()) continue;
    if (!open) {
      static const std::set<std::string> kinds{"automaton", "group", "demonstration", "cosettable", "presentation"};
      if (!kinds.count(l.tokens[0]))
        throw LoadError(source + ":" + std::to_string(number) + ": expected a block header, got '" + l.tokens[0] + "'");
      if (l.tokens.size() < 2)
        throw LoadError(source + ":" + std::to_string(number) + ": " + l.tokens[0] + " block needs a name");
      blocks.push_back({source, l, {}});
      open = true;
    } else if (l.tokens.size() == 1 && l.tokens[0] == "end") {
      open = false;
    } else {
      blocks.back().body.push_back(l);
    }
  }
  if (open) blocks.back().fail("block '" + blocks.back().name() + "' is missing 'end'");
  return blocks;
}

// Text after the first '=' of a line.
std::string rhs(const Block& b, const Line& l) {
  auto eq = l.text.find('=');
  if (eq == std::string::npos) b.fail(l, "expected '='");
  return l.text.substr(eq + 1);
}

Letter letter(const Block& b, const Line& l, const std::string& name) {
  if (name == "eps") b.fail(l, "'eps' is reserved and cannot be a letter");
  try {
    return Letter(name);
  } catch (const Error& e) {
    b.fail(l, e.what());
  }
}

long long integer(const Block& b, const Line& l, const std::string& s) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    b.fail(l, "expected an integer, got '" + s + "'");
  }
}

// "KEY VALUE" parameter from a header such as "group G perm degree 3".
long long header_param(const Block& b, std::size_t at, const std::string& key) {
  const auto& t = b.header.tokens;
  if (t.size() != at + 2 || t[at] != key) b.fail("expected '" + key + " N' in header");
  return integer(b, b.header, t[at + 1]);
}

Nfa parse_automaton(const Block& b) {
  if (b.header.tokens.size() != 2) b.fail("unexpected tokens after automaton name");
  Nfa a;
  std::map<std::string, automata::StateId> states;
  auto state = [&](const Line& l, const std::string& s) {
    auto it = states.find(s);
    if (it == states.end()) b.fail(l, "undeclared state '" + s + "'");
    return it->second;
  };
  bool have_alphabet = false;
  for (const auto& l : b.body) {
    const auto& t = l.tokens;
    const std::string& key = t[0];
    if (key == "alphabet") {
      if (have_alphabet) b.fail(l, "alphabet given twice");
      have_alphabet = true;
      for (std::size_t i = 1; i < t.size(); ++i) {
        Letter x = letter(b, l, t[i]);
        if (a.letter_index(x)) b.fail(l, "alphabet collision: letter '" + t[i] + "' listed twice");
        a.add_letter(x);
      }
    } else if (key == "states") {
      for (std::size_t i = 1; i < t.size(); ++i) {
        if (states.count(t[i])) b.fail(l, "state '" + t[i] + "' declared twice");
        try {
          states[t[i]] = a.add_state(t[i]);
        } catch (const Error& e) {
          b.fail(l, e.what());
        }
      }
    } else if (key == "initial" || key == "accept") {
      for (std::size_t i = 1; i < t.size(); ++i) {
        auto s = state(l, t[i]);
        key == "initial" ? a.set_initial(s) : a.set_accepting(s);
      }
    } else if (key == "trans") {
      if (t.size() != 4) b.fail(l, "expected 'trans FROM LABEL TO'");
      auto from = state(l, t[1]);
      auto to = state(l, t[3]);
      if (t[2] == "eps") {
        a.add_epsilon(from, to);
      } else {
        auto x = a.letter_index(Letter(t[2]));
        if (!x) b.fail(l, "letter '" + t[2] + "' is not in the alphabet");
        a.add_transition(from, *x, to);
      }
    } else {
      b.fail(l, "unknown automaton line '" + key + "'");
    }
  }
  return a;
}

// Generator lines shared by the perm, matrix and zk backends: "gen x = VALUE"
// or "gen y = inv x".
template <typename Value, typename ParseFn, typename InvFn>
std::vector<std::pair<Letter, Value>> parse_gens(const Block& b, ParseFn parse, InvFn inverse) {
  std::vector<std::pair<Letter, Value>> gens;
  for (const auto& l : b.body) {
    const auto& t = l.tokens;
    if (t[0] != "gen" || t.size() < 4 || t[2] != "=") b.fail(l, "expected 'gen NAME = VALUE'");
    Letter x = letter(b, l, t[1]);
    for (const auto& [y, _] : gens)
      if (y == x) b.fail(l, "generator '" + t[1] + "' defined twice");
    if (t[3] == "inv") {
      if (t.size() != 5) b.fail(l, "expected 'gen NAME = inv OTHER'");
      auto it = std::find_if(gens.begin(), gens.end(), [&](const auto& g) { return g.first.name() == t[4]; });
      if (it == gens.end()) b.fail(l, "'inv " + t[4] + "' refers to an undefined generator");
      gens.emplace_back(x, inverse(it->second));
      continue;
    }
    try {
      gens.emplace_back(x, parse(rhs(b, l)));
    } catch (const LoadError&) {
      throw;
    } catch (const Error& e) {
      b.fail(l, e.what());
    }
  }
  return gens;
}

// All integers in a text such as "[[1,0],[0,1]]" or "(1, -2)", with the
// bracket structure (rows) recorded for matrices.
std::vector<std::vector<groups::BigInt>> parse_rows(const std::string& s) {
  std::vector<std::vector<groups::BigInt>> rows;
  int depth = 0;
  std::string num;
  auto flush = [&]() {
    if (num.empty()) return;
    if (num == "-" || num == "+") throw Error("malformed number in '" + s + "'");
    if (rows.empty()) rows.emplace_back();
    rows.back().push_back(groups::BigInt(num));
    num.clear();
  };
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c)) || ((c == '-' || c == '+') && num.empty())) {
      num += c;
    } else if (c == '[' || c == '(') {
      flush();
      ++depth;
      if (depth == 2) rows.emplace_back();
    } else if (c == ']' || c == ')') {
      flush();
      --depth;
    } else if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      throw Error(std::string("unexpected character '") + c + "' in '" + s + "'");
    }
  }
  flush();
  if (depth != 0) throw Error("unbalanced brackets in '" + s + "'");
  return rows;
}

struct RawGroup {
  const Block* block;
  OraclePtr oracle;
  bool visiting = false;
};

OraclePtr build_group(const std::string& name, std::map<std::string, RawGroup>& raw);

OraclePtr parse_group(const Block& b, std::map<std::string, RawGroup>& raw) {
  const auto& h = b.header.tokens;
  if (h.size() < 3) b.fail("group header needs a backend (perm, matrix, zk, free, graphproduct)");
  const std::string& kind = h[2];
  try {
    if (kind == "perm") {
      int degree = static_cast<int>(header_param(b, 3, "degree"));
      if (degree < 0) b.fail("degree must be non-negative");
      using P = groups::PermutationOracle::Permutation;
      auto gens = parse_gens<P>(
          b, [&](const std::string& s) { return groups::PermutationOracle::parse_cycles(s, degree); },
          [](const P& p) {
            P q(p.size());
            for (std::size_t i = 0; i < p.size(); ++i) q[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
            return q;
          });
      return std::make_shared<groups::PermutationOracle>(degree, std::move(gens));
    }
    if (kind == "matrix") {
      long long dim = header_param(b, 3, "dim");
      if (dim < 1) b.fail("dim must be positive");
      auto gens = parse_gens<groups::IntMatrix>(
          b,
          [&](const std::string& s) {
            auto m = groups::IntMatrix::from_rows(parse_rows(s));
            if (m.dim() != static_cast<std::size_t>(dim)) throw Error("matrix is not " + std::to_string(dim) + "x" + std::to_string(dim));
            auto det = m.determinant();
            if (det != 1 && det != -1) throw Error("matrix does not have determinant +-1");
            return m;
          },
          [](const groups::IntMatrix& m) { return m.inverse(); });
      return std::make_shared<groups::IntegerMatrixOracle>(static_cast<std::size_t>(dim), std::move(gens));
    }
    if (kind == "zk") {
      long long rank = header_param(b, 3, "rank");
      if (rank < 0) b.fail("rank must be non-negative");
      using V = groups::FreeAbelianOracle::Vector;
      if (b.body.empty()) return groups::FreeAbelianOracle::standard(groups::FreeGroupOracle::default_names(rank));
      auto gens = parse_gens<V>(
          b,
          [&](const std::string& s) {
            V v;
            for (const auto& row : parse_rows(s))
              for (const auto& x : row) v.push_back(static_cast<std::int64_t>(x));
            if (v.size() != static_cast<std::size_t>(rank)) throw Error("vector does not have " + std::to_string(rank) + " entries");
            return v;
          },
          [](V v) {
            for (auto& x : v) x = -x;
            return v;
          });
      return std::make_shared<groups::FreeAbelianOracle>(static_cast<std::size_t>(rank), std::move(gens));
    }
    if (kind == "free") {
      long long rank = header_param(b, 3, "rank");
      if (rank < 0) b.fail("rank must be non-negative");
      std::vector<std::string> names = groups::FreeGroupOracle::default_names(static_cast<std::size_t>(rank));
      for (const auto& l : b.body) {
        if (l.tokens[0] != "generators") b.fail(l, "expected 'generators NAME ...'");
        names.assign(l.tokens.begin() + 1, l.tokens.end());
        if (names.size() != static_cast<std::size_t>(rank)) b.fail(l, "expected " + std::to_string(rank) + " generator names");
        for (const auto& n : names) letter(b, l, n);
      }
      return std::make_shared<groups::FreeGroupOracle>(std::move(names));
    }
    if (kind == "graphproduct") {
      if (h.size() != 3) b.fail("unexpected tokens after 'graphproduct'");
      std::optional<groups::VertexGraph> graph;
      std::vector<std::pair<const Line*, std::pair<std::string, std::string>>> edges;
      std::map<std::string, std::pair<const Line*, std::string>> uses;
      for (const auto& l : b.body) {
        const auto& t = l.tokens;
        if (t[0] == "vertices") {
          if (graph) b.fail(l, "vertices given twice");
          std::vector<std::string> names(t.begin() + 1, t.end());
          std::set<std::string> distinct(names.begin(), names.end());
          if (distinct.size() != names.size()) b.fail(l, "repeated vertex name");
          graph = groups::VertexGraph(names);
        } else if (t[0] == "edge") {
          if (t.size() != 3) b.fail(l, "expected 'edge U V'");
          edges.push_back({&l, {t[1], t[2]}});
        } else if (t[0] == "vertex") {
          if (t.size() != 4 || t[2] != "uses") b.fail(l, "expected 'vertex V uses GROUP'");
          if (uses.count(t[1])) b.fail(l, "vertex '" + t[1] + "' assigned twice");
          uses[t[1]] = {&l, t[3]};
        } else {
          b.fail(l, "unknown graphproduct line '" + t[0] + "'");
        }
      }
      if (!graph) b.fail("graphproduct needs a 'vertices' line");
      for (const auto& [l, e] : edges) {
        try {
          graph->add_edge(e.first, e.second);
        } catch (const Error& err) {
          b.fail(*l, err.what());
        }
      }
      std::vector<OraclePtr> vertex_groups;
      for (const auto& v : graph->names()) {
        auto it = uses.find(v);
        if (it == uses.end()) b.fail("vertex '" + v + "' has no group");
        if (!raw.count(it->second.second)) b.fail(*it->second.first, "undefined group '" + it->second.second + "'");
        vertex_groups.push_back(build_group(it->second.second, raw));
      }
      for (const auto& [v, u] : uses)
        if (!std::count(graph->names().begin(), graph->names().end(), v)) b.fail(*u.first, "unknown vertex '" + v + "'");
      return std::make_shared<groups::GraphProductOracle>(*graph, std::move(vertex_groups));
    }
  } catch (const LoadError&) {
    throw;
  } catch (const Error& e) {
    b.fail(e.what());
  }
  b.fail("unknown group backend '" + kind + "'");
}

OraclePtr build_group(const std::string& name, std::map<std::string, RawGroup>& raw) {
  RawGroup& r = raw.at(name);
  if (r.oracle) return r.oracle;
  if (r.visiting) r.block->fail("group '" + name + "' refers to itself");
  r.visiting = true;
  r.oracle = parse_group(*r.block, raw);
  r.visiting = false;
  return r.oracle;
}

Word parse_word_at(const Block& b, const Line& l, const std::string& text) {
  try {
    return parse_word(text);
  } catch (const Error& e) {
    b.fail(l, e.what());
  }
}

TableEntry parse_table(const Block& b, const Workspace& w) {
  const auto& h = b.header.tokens;
  if (h.size() != 4 && h.size() != 6) b.fail("expected 'cosettable NAME group G [subgroupof N]'");
  if (h[2] != "group") b.fail("expected 'group G' after the table name");
  if (!w.groups.count(h[3])) b.fail("undefined group '" + h[3] + "'");
  std::optional<long long> index;
  if (h.size() == 6) index = header_param(b, 4, "subgroupof");
  const OraclePtr& g = w.group(h[3]);

  std::vector<std::string> cosets;
  std::vector<Word> reps;
  std::vector<constructions::CosetTable::Action> actions;
  for (const auto& l : b.body) {
    const auto& t = l.tokens;
    if (t[0] == "coset") {
      if (t.size() < 4 || t[2] != "rep") b.fail(l, "expected 'coset NAME rep WORD'");
      cosets.push_back(t[1]);
      Word rep;
      for (std::size_t i = 3; i < t.size(); ++i)
        if (t[i] != "eps") rep.push_back(letter(b, l, t[i]));
      for (const auto& x : rep)
        if (!g->has_letter(x)) b.fail(l, "representative uses '" + x.name() + "', which is not a generator of " + h[3]);
      reps.push_back(rep);
    } else if (t[0] == "action") {
      if (t.size() != 4) b.fail(l, "expected 'action FROM GENERATOR TO'");
      actions.push_back({t[1], letter(b, l, t[2]), t[3]});
    } else {
      b.fail(l, "unknown cosettable line '" + t[0] + "'");
    }
  }
  if (index && *index != static_cast<long long>(cosets.size()))
    b.fail("declared index " + std::to_string(*index) + " but " + std::to_string(cosets.size()) + " cosets are listed");
  try {
    return TableEntry{h[3], constructions::CosetTable(cosets, g->alphabet(), reps, actions)};
  } catch (const Error& e) {
    b.fail(e.what());
  }
}

wp::Presentation parse_presentation(const Block& b) {
  if (b.header.tokens.size() != 2) b.fail("unexpected tokens after presentation name");
  std::optional<std::vector<std::string>> gens;
  std::vector<std::pair<const Line*, Word>> rels;
  for (const auto& l : b.body) {
    const auto& t = l.tokens;
    if (t[0] == "alphabet") {
      if (gens) b.fail(l, "alphabet given twice");
      gens.emplace(t.begin() + 1, t.end());
      for (const auto& x : *gens) letter(b, l, x);
    } else if (t[0] == "relator") {
      rels.push_back({&l, parse_word_at(b, l, l.text.substr(l.text.find("relator") + 7))});
    } else {
      b.fail(l, "unknown presentation line '" + t[0] + "'");
    }
  }
  if (!gens) b.fail("presentation needs an 'alphabet' line");
  try {
    wp::FreeAlphabet alpha(*gens);
    for (const auto& [l, r] : rels) {
      try {
        alpha.reduce(r);
      } catch (const Error& e) {
        b.fail(*l, e.what());
      }
    }
    std::vector<Word> words;
    for (auto& [l, r] : rels) words.push_back(r);
    return wp::Presentation(*gens, words);
  } catch (const LoadError&) {
    throw;
  } catch (const Error& e) {
    b.fail(e.what());
  }
}

void link_demo(const Block& b, const std::string& name, Workspace& w) {
  if (b.header.tokens.size() != 2) b.fail("unexpected tokens after demonstration name");
  DemoEntry e;
  std::optional<const Line*> group_line, automaton_line, subgroup_line;
  for (const auto& l : b.body) {
    const auto& t = l.tokens;
    if (t[0] == "builtin") {
      if (e.builtin) b.fail(l, "builtin given twice");
      std::string desc;
      for (std::size_t i = 1; i < t.size(); ++i) desc += (i > 1 ? " " : "") + t[i];
      e.builtin = desc;
    } else if (t[0] == "group" || t[0] == "automaton" || t[0] == "subgroup") {
      if (t.size() != 2) b.fail(l, "expected '" + t[0] + " NAME'");
      auto& slot = t[0] == "group" ? group_line : t[0] == "automaton" ? automaton_line : subgroup_line;
      if (slot) b.fail(l, t[0] + " given twice");
      slot = &l;
    } else if (t[0] == "letter") {
      if (t.size() < 4 || t[2] != "=") b.fail(l, "expected 'letter NAME = WORD'");
      Letter x = letter(b, l, t[1]);
      for (const auto& [y, _] : e.letters)
        if (y == x) b.fail(l, "letter '" + t[1] + "' evaluated twice");
      e.letters.emplace_back(x, parse_word_at(b, l, rhs(b, l)));
    } else {
      b.fail(l, "unknown demonstration line '" + t[0] + "'");
    }
  }
  if (e.builtin) {
    if (group_line || automaton_line || subgroup_line || !e.letters.empty())
      b.fail("a builtin demonstration takes no other lines");
    try {
      e.demo = make_builtin(*e.builtin, w);
    } catch (const Error& err) {
      b.fail(err.what());
    }
    w.add_demo(name, std::move(e));
    return;
  }
  if (!group_line) b.fail("demonstration needs a 'group' line");
  if (!automaton_line) b.fail("demonstration needs an 'automaton' line");
  e.group = (*group_line)->tokens[1];
  e.automaton = (*automaton_line)->tokens[1];
  if (!w.groups.count(e.group)) b.fail(**group_line, "undefined group '" + e.group + "'");
  if (!w.automata.count(e.automaton)) b.fail(**automaton_line, "undefined automaton '" + e.automaton + "'");
  const OraclePtr& g = w.group(e.group);
  const Nfa& a = w.automaton(e.automaton);
  try {
    if (e.letters.empty()) {
      e.demo = demo::Demonstration::identity_mapped(g, a);
    } else {
      automata::LetterMap m(e.letters.begin(), e.letters.end());
      e.demo = demo::Demonstration(g, m, a);
    }
  } catch (const Error& err) {
    b.fail(err.what());
  }
  if (subgroup_line) {
    e.subgroup = (*subgroup_line)->tokens[1];
    if (!w.tables.count(*e.subgroup)) b.fail(**subgroup_line, "undefined coset table '" + *e.subgroup + "'");
    const TableEntry& t = w.table(*e.subgroup);
    if (t.group != e.group) b.fail(**subgroup_line, "coset table '" + *e.subgroup + "' belongs to group '" + t.group + "'");
    auto table = t.table;
    e.demo->set_subgroup({"subgroup of index " + std::to_string(table.size()),
                          [table](const Word& x) { return table.in_subgroup(x); }});
  }
  w.add_demo(name, std::move(e));
}

}  // namespace

namespace {

Workspace link(const std::vector<Block>& blocks) {
  Workspace w;
  std::map<std::string, RawGroup> raw_groups;
  std::map<std::string, std::set<std::string>> seen;
  for (const auto& b : blocks) {
    if (!seen[b.kind()].insert(b.name()).second) b.fail("duplicate " + b.kind() + " '" + b.name() + "'");
    if (b.kind() == "group") raw_groups[b.name()] = RawGroup{&b, nullptr};
  }
  // groups first, since graph products and everything else refer to them
  for (const auto& b : blocks)
    if (b.kind() == "group") w.add_group(b.name(), build_group(b.name(), raw_groups));
  for (const auto& b : blocks) {
    if (b.kind() == "automaton") w.add_automaton(b.name(), parse_automaton(b));
    if (b.kind() == "presentation") w.add_presentation(b.name(), parse_presentation(b));
    if (b.kind() == "cosettable") w.add_table(b.name(), parse_table(b, w));
  }
  for (const auto& b : blocks)
    if (b.kind() == "demonstration") link_demo(b, b.name(), w);
  return w;
}

}  // namespace

Workspace parse_workspace(const std::string& text, const std::string& source) {
  return link(split_blocks(text, source));
}

Workspace load(const std::vector<std::string>& paths) {
  std::vector<Block> blocks;
  for (const auto& p : paths) {
    std::ifstream in(p);
    if (!in) throw LoadError(p + ": cannot open file");
    std::ostringstream s;
    s << in.rdbuf();
    for (auto& b : split_blocks(s.str(), p)) blocks.push_back(std::move(b));
  }
  return link(blocks);
}

// ------------------------------------------------------------ rendering

std::string render_automaton(const std::string& name, const Nfa& a) {
  std::vector<std::string> names;
  for (automata::StateId s = 0; s < a.state_count(); ++s) names.push_back(a.state_name(s));
  std::set<std::string> distinct(names.begin(), names.end());
  if (distinct.size() != names.size() || distinct.count("eps"))
    for (automata::StateId s = 0; s < a.state_count(); ++s) names[s] = "s" + std::to_string(s);

  std::ostringstream out;
  auto list = [&](const char* key, const std::vector<std::string>& items) {
    out << "  " << key;
    for (const auto& i : items) out << ' ' << i;
    out << '\n';
  };
  out << "automaton " << name << '\n';
  std::vector<std::string> letters;
  for (const auto& x : a.alphabet()) letters.push_back(x.name());
  list("alphabet", letters);
  list("states", names);
  std::vector<std::string> init, acc;
  for (auto s : a.initial_states()) init.push_back(names[s]);
  for (auto s : a.accepting_states()) acc.push_back(names[s]);
  list("initial", init);
  list("accept", acc);
  for (const auto& t : a.transitions())
    out << "  trans " << names[t.from] << ' ' << (t.label == Nfa::kEpsilon ? "eps" : a.alphabet()[t.label].name())
        << ' ' << names[t.to] << '\n';
  out << "end\n";
  return out.str();
}

namespace {

std::string render_vector(const groups::FreeAbelianOracle::Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string render_group(const std::string& name, const groups::GroupOracle& g, const Workspace& w) {
  std::ostringstream out;
  if (auto p = dynamic_cast<const groups::PermutationOracle*>(&g)) {
    out << "group " << name << " perm degree " << p->degree() << '\n';
    for (const auto& x : g.alphabet())
      out << "  gen " << x.name() << " = " << groups::PermutationOracle::format_cycles(p->generator(x)) << '\n';
  } else if (auto m = dynamic_cast<const groups::IntegerMatrixOracle*>(&g)) {
    out << "group " << name << " matrix dim " << m->dim() << '\n';
    for (const auto& x : g.alphabet()) out << "  gen " << x.name() << " = " << m->generator(x).to_string() << '\n';
  } else if (auto z = dynamic_cast<const groups::FreeAbelianOracle*>(&g)) {
    out << "group " << name << " zk rank " << z->rank() << '\n';
    for (const auto& x : g.alphabet()) out << "  gen " << x.name() << " = " << render_vector(z->generator(x)) << '\n';
  } else if (auto f = dynamic_cast<const groups::FreeGroupOracle*>(&g)) {
    out << "group " << name << " free rank " << f->rank() << '\n';
    if (f->generator_names() != groups::FreeGroupOracle::default_names(f->rank())) {
      out << "  generators";
      for (const auto& n : f->generator_names()) out << ' ' << n;
      out << '\n';
    }
  } else if (auto gp = dynamic_cast<const groups::GraphProductOracle*>(&g)) {
    const auto& graph = gp->graph();
    out << "group " << name << " graphproduct\n  vertices";
    for (const auto& v : graph.names()) out << ' ' << v;
    out << '\n';
    for (auto [u, v] : graph.edges()) out << "  edge " << graph.name(u) << ' ' << graph.name(v) << '\n';
    for (std::size_t v = 0; v < graph.size(); ++v) {
      auto n = w.name_of(gp->vertex_group(v).get());
      if (!n) throw Error("vertex group of '" + graph.name(v) + "' in '" + name + "' has no name");
      out << "  vertex " << graph.name(v) << " uses " << *n << '\n';
    }
  } else {
    throw Error("cannot render group '" + name + "' of kind " + g.kind());
  }
  out << "end\n";
  return out.str();
}

}  // namespace

std::string render(const Workspace& w) {
  std::ostringstream out;
  // vertex groups before the graph products that use them
  std::set<std::string> done;
  std::function<void(const std::string&)> emit = [&](const std::string& name) {
    if (!done.insert(name).second) return;
    const OraclePtr& g = w.group(name);
    if (auto gp = std::dynamic_pointer_cast<const groups::GraphProductOracle>(g))
      for (std::size_t v = 0; v < gp->graph().size(); ++v)
        if (auto n = w.name_of(gp->vertex_group(v).get())) emit(*n);
    out << render_group(name, *g, w) << '\n';
  };
  for (const auto& name : w.group_order) emit(name);
  for (const auto& name : w.automaton_order) out << render_automaton(name, w.automata.at(name)) << '\n';
  for (const auto& name : w.table_order) {
    const TableEntry& e = w.tables.at(name);
    const auto& t = e.table;
    out << "cosettable " << name << " group " << e.group << " subgroupof " << t.size() << '\n';
    for (std::size_t c = 0; c < t.size(); ++c) out << "  coset " << t.name(c) << " rep " << to_string(t.representative(c)) << '\n';
    for (const auto& a : t.actions()) out << "  action " << a.from << ' ' << a.generator.name() << ' ' << a.to << '\n';
    out << "end\n\n";
  }
  for (const auto& name : w.presentation_order) {
    const auto& p = w.presentations.at(name);
    out << "presentation " << name << "\n  alphabet";
    for (const auto& g : p.alphabet.generators()) out << ' ' << g;
    out << '\n';
    for (const auto& r : p.relators) out << "  relator " << to_string(r) << '\n';
    out << "end\n\n";
  }
  for (const auto& name : w.demo_order) {
    const DemoEntry& e = w.demos.at(name);
    out << "demonstration " << name << '\n';
    if (e.builtin) {
      out << "  builtin " << *e.builtin << '\n';
    } else {
      out << "  group " << e.group << '\n';
      for (const auto& [x, word] : e.letters) out << "  letter " << x.name() << " = " << to_string(word) << '\n';
      out << "  automaton " << e.automaton << '\n';
      if (e.subgroup) out << "  subgroup " << *e.subgroup << '\n';
    }
    out << "end\n\n";
  }
  std::string s = out.str();
  while (s.size() >= 2 && s[s.size() - 1] == '\n' && s[s.size() - 2] == '\n') s.pop_back();
  return s;
}

}  // namespace epic::cli
