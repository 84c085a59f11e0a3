#include "epic/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "epic/constructions.hpp"
#include "epic/graph_product.hpp"

namespace epic::cli {

namespace {

using automata::LetterMap;
using automata::Nfa;
using demo::Demonstration;
using groups::OraclePtr;

class UsageError : public Error {
 public:
  using Error::Error;
};

// "x=WORD" arguments, in command line order.
std::vector<std::pair<Letter, Word>> assignments(const std::vector<std::string>& args, const std::string& flag) {
  std::vector<std::pair<Letter, Word>> out;
  for (const auto& a : args) {
    auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError(flag + " expects NAME=WORD, got '" + a + "'");
    Letter x(a.substr(0, eq));
    for (const auto& [y, _] : out)
      if (y == x) throw UsageError(flag + " assigns '" + x.name() + "' twice");
    out.emplace_back(x, parse_word(a.substr(eq + 1)));
  }
  return out;
}

LetterMap to_map(const std::vector<std::pair<Letter, Word>>& v) { return LetterMap(v.begin(), v.end()); }

// Length-lex rank of language letters, for stable listings.
std::function<std::size_t(const Letter&)> rank_in(const Nfa& a) {
  return [&a](const Letter& x) { return static_cast<std::size_t>(*a.letter_index(x)); };
}

Workspace merged(const Workspace& base, const std::vector<std::string>& files) {
  if (files.empty()) return base;
  Workspace extra = load(files);
  Workspace w = base;
  for (const auto& n : extra.group_order) w.add_group(n, extra.groups.at(n));
  for (const auto& n : extra.automaton_order) w.add_automaton(n, extra.automata.at(n));
  for (const auto& n : extra.table_order) w.add_table(n, extra.tables.at(n));
  for (const auto& n : extra.presentation_order) w.add_presentation(n, extra.presentations.at(n));
  for (const auto& n : extra.demo_order) w.add_demo(n, extra.demos.at(n));
  return w;
}

Demonstration resolve_demo(const Workspace& w, const std::string& name) {
  // "builtin:z", "builtin:free:2" and the like name the builtin demonstrations
  if (name.rfind("builtin:", 0) == 0) {
    std::string desc = name.substr(8);
    std::replace(desc.begin(), desc.end(), ':', ' ');
    return make_builtin(desc, w);
  }
  if (!w.demos.count(name)) throw UsageError("unknown demonstration '" + name + "'");
  return w.demonstration(name);
}

// Output workspace for a construction: the new demonstration plus everything
// it refers to, reusing the input names where the objects came from there.
class Output {
 public:
  Output(const Workspace& in, std::string name) : in_(in), name_(std::move(name)) {}

  std::string group(const OraclePtr& g, const std::string& preferred) {
    for (const auto& n : out_.group_order)
      if (out_.groups.at(n).get() == g.get()) return n;
    if (auto gp = std::dynamic_pointer_cast<const groups::GraphProductOracle>(g))
      for (std::size_t v = 0; v < gp->graph().size(); ++v)
        group(gp->vertex_group(v), preferred + "_" + gp->graph().name(v));
    std::string n = in_.name_of(g.get()).value_or(fresh(preferred));
    out_.add_group(n, g);
    return n;
  }

  void table(const std::string& name) {
    if (!out_.tables.count(name)) out_.add_table(name, in_.table(name));
  }

  void demo(const Demonstration& d, std::optional<std::string> subgroup = std::nullopt,
            std::optional<std::string> group_name = std::nullopt) {
    DemoEntry e;
    e.group = group_name ? *group_name : group(d.oracle(), name_ + "_group");
    e.automaton = name_ + "_lang";
    out_.add_automaton(e.automaton, d.language());
    if (!d.has_identity_eval_map())
      for (const auto& [x, w] : d.eval_map()) e.letters.emplace_back(x, w);
    e.subgroup = std::move(subgroup);
    e.demo = d;
    out_.add_demo(name_, std::move(e));
  }

  void automaton(const Nfa& a) { out_.add_automaton(name_, a); }

  const Workspace& workspace() const { return out_; }

 private:
  std::string fresh(const std::string& base) {
    std::string n = base;
    for (int i = 2; out_.groups.count(n) || in_.groups.count(n); ++i) n = base + std::to_string(i);
    return n;
  }

  const Workspace& in_;
  std::string name_;
  Workspace out_;
};

// Elements of `o` reached by lifted language words of length <= radius,
// together with the identity; a bounded stand-in for subgroup membership.
std::function<bool(const Word&)> bounded_membership(const Demonstration& d, const LetterMap& lift,
                                                    const OraclePtr& o, std::size_t radius) {
  auto keys = std::make_shared<std::set<groups::ElementKey>>();
  keys->insert(o->identity_key());
  automata::for_each_accepted(d.language(), radius, [&](const Word& w) {
    Word e;
    for (const auto& x : w) {
      auto it = lift.find(x);
      if (it != lift.end()) {
        e.insert(e.end(), it->second.begin(), it->second.end());
      } else {
        e.push_back(x);
      }
    }
    keys->insert(o->evaluate(e));
    return true;
  });
  return [keys, o](const Word& w) { return keys->count(o->evaluate(w)) != 0; };
}

struct Options {
  std::vector<std::string> files;
  bool porcelain = false;
  std::string demo, automaton, group, presentation, table, name = "result", out_file, word, resume, save, builtin;
  std::size_t max_len = 0, radius = 0, search_len = 0, complete_at = 0, count = 10;
  std::optional<std::size_t> ball, search, complete, in_radius, check_len, identity_rep_given;
  std::uint64_t budget = 1000000;
  std::vector<std::string> letters, maps, lifts, transversal, vertices, edges;
  std::string n_demo, q_demo, identity_rep;
};

void write_output(const Options& o, const Workspace& w, std::ostream& out) {
  std::string text = render(w);
  if (o.out_file.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_file);
  if (!f) throw Error("cannot write '" + o.out_file + "'");
  f << text;
}

// ------------------------------------------------------------ verbs

int verify(const Workspace& w, const Options& o, std::ostream& out) {
  Demonstration d = o.builtin.empty() ? resolve_demo(w, o.demo) : make_builtin(o.builtin, w);
  std::vector<Word> bad = demo::verify_no_identity(d, o.max_len);
  if (!o.ball) {
    if (o.porcelain) {
      out << "search_len\t" << o.max_len << '\n';
      for (const auto& v : bad) out << "violation\t" << to_string(v) << '\n';
      out << "summary\t0\t0\t" << bad.size() << '\n';
    } else {
      out << "search length: " << o.max_len << '\n' << "violating words:\n";
      for (const auto& v : bad) out << "  " << to_string(v) << '\n';
      out << "identity violations: " << bad.size() << ", missing: 0\n";
    }
    return bad.empty() ? kOk : kViolation;
  }
  const std::size_t search_len = o.search.value_or(o.max_len);
  demo::CoverageReport r = demo::verify_coverage(d, *o.ball, search_len);
  // the identity check may reach further than the coverage search
  auto rank = rank_in(d.language());
  for (auto& v : bad)
    if (std::find(r.identity_violations.begin(), r.identity_violations.end(), v) == r.identity_violations.end())
      r.identity_violations.push_back(v);
  std::sort(r.identity_violations.begin(), r.identity_violations.end(),
            [&](const Word& a, const Word& b) { return length_lex_less(a, b, rank); });
  out << demo::render_report(r, o.porcelain);
  if (!r.identity_violations.empty()) return kViolation;
  const bool must_be_complete = o.complete && d.oracle()->is_finite() && search_len >= *o.complete;
  return must_be_complete && !r.missing.empty() ? kViolation : kOk;
}

int enumerate_verb(const Workspace& w, const Options& o, std::ostream& out) {
  if (o.demo.empty() == o.automaton.empty()) throw UsageError("enumerate needs exactly one of --automaton and --demo");
  const Nfa a = o.automaton.empty() ? resolve_demo(w, o.demo).language() : w.automaton(o.automaton);
  automata::for_each_accepted(a, o.max_len, [&](const Word& x) {
    out << to_string(x) << '\n';
    return true;
  });
  return kOk;
}

int ball_verb(const Workspace& w, const Options& o, std::ostream& out) {
  groups::Ball b = groups::ball(*w.group(o.group), o.radius);
  for (const auto& [k, x] : b) out << k.bytes() << (o.porcelain ? "\t" : " <- ") << to_string(x) << '\n';
  if (!o.porcelain) out << "elements: " << b.size() << '\n';
  return kOk;
}

int render_verb(const Workspace& w, std::ostream& out) {
  out << render(w);
  return kOk;
}

int change_gens(const Workspace& w, const Options& o, std::ostream& out) {
  Demonstration d = resolve_demo(w, o.demo);
  auto targets = assignments(o.letters, "--letter");
  if (targets.empty()) throw UsageError("change-gens needs at least one --letter");
  std::vector<Letter> alphabet;
  for (const auto& [y, _] : targets) alphabet.push_back(y);
  LetterMap target_eval = to_map(targets);
  LetterMap phi = o.search ? constructions::find_generator_images(d, alphabet, target_eval, *o.search)
                           : to_map(assignments(o.maps, "--map"));
  Output result(w, o.name);
  result.demo(constructions::change_generators(d, alphabet, target_eval, phi));
  write_output(o, result.workspace(), out);
  return kOk;
}

int extension_verb(const Workspace& w, const Options& o, std::ostream& out, std::ostream& err) {
  Demonstration dN = resolve_demo(w, o.n_demo);
  Demonstration dQ = resolve_demo(w, o.q_demo);
  const OraclePtr& e = w.group(o.group);
  LetterMap lift = to_map(assignments(o.lifts, "--lift"));
  // membership in N is known only through the N demonstration
  LetterMap n_lift = lift;
  for (const auto& x : dN.language().alphabet())
    if (!n_lift.count(x)) n_lift[x] = Word{x};
  auto in_n = bounded_membership(dN, n_lift, e, o.in_radius.value_or(6));
  Output result(w, o.name);
  result.demo(constructions::extension(dN, dQ, e, in_n, lift));
  write_output(o, result.workspace(), out);
  auto problems = constructions::check_extension_inputs(dN, dQ, *e, in_n, lift, o.check_len.value_or(4));
  for (const auto& p : problems) err << "warning: " << p << '\n';
  return problems.empty() ? kOk : kViolation;
}

int fi_overgroup_verb(const Workspace& w, const Options& o, std::ostream& out) {
  Demonstration dG = resolve_demo(w, o.demo);
  const OraclePtr& h = w.group(o.group);
  LetterMap lift = to_map(assignments(o.lifts, "--lift"));
  LetterMap t = to_map(assignments(o.transversal, "--transversal"));
  if (t.empty()) throw UsageError("fi-overgroup needs at least one --transversal");
  LetterMap g_lift = lift;
  for (const auto& x : dG.language().alphabet())
    if (!g_lift.count(x)) g_lift[x] = Word{x};
  auto in_g = bounded_membership(dG, g_lift, h, o.in_radius.value_or(6));
  Output result(w, o.name);
  result.demo(constructions::fi_overgroup(dG, h, t, in_g, lift));
  write_output(o, result.workspace(), out);
  return kOk;
}

int fi_subgroup_verb(const Workspace& w, const Options& o, std::ostream& out) {
  Demonstration dG = resolve_demo(w, o.demo);
  const TableEntry& t = w.table(o.table);
  Output result(w, o.name);
  std::string g = result.group(dG.oracle(), t.group);
  result.table(o.table);
  if (g != t.group) throw UsageError("coset table '" + o.table + "' is for group '" + t.group + "', not '" + g + "'");
  result.demo(constructions::fi_subgroup(dG, t.table), o.table, g);
  write_output(o, result.workspace(), out);
  return kOk;
}

int graph_product_verb(const Workspace& w, const Options& o, std::ostream& out) {
  std::vector<std::string> names;
  std::vector<Demonstration> local;
  for (const auto& v : o.vertices) {
    auto eq = v.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--vertex expects VERTEX=DEMO, got '" + v + "'");
    names.push_back(v.substr(0, eq));
    local.push_back(resolve_demo(w, v.substr(eq + 1)));
  }
  groups::VertexGraph g(names);
  for (const auto& e : o.edges) {
    auto comma = e.find(',');
    if (comma == std::string::npos) throw UsageError("--edge expects U,V, got '" + e + "'");
    g.add_edge(e.substr(0, comma), e.substr(comma + 1));
  }
  Output result(w, o.name);
  result.demo(constructions::graph_product(g, local));
  write_output(o, result.workspace(), out);
  return kOk;
}

int autostackable_verb(const Workspace& w, const Options& o, std::ostream& out) {
  Output result(w, o.name);
  result.automaton(constructions::autostackable_projection(w.automaton(o.automaton)));
  write_output(o, result.workspace(), out);
  return kOk;
}

int cross_section_verb(const Workspace& w, const Options& o, std::ostream& out) {
  Output result(w, o.name);
  result.demo(constructions::cross_section_to_demo(w.automaton(o.automaton), w.group(o.group), parse_word(o.identity_rep)));
  write_output(o, result.workspace(), out);
  return kOk;
}

int wp_decide(const Workspace& w, const Options& o, std::ostream& out, std::ostream& err) {
  const wp::Presentation& p = w.presentation(o.presentation);
  Demonstration d = resolve_demo(w, o.demo);
  Nfa lang = d.has_identity_eval_map() ? d.language() : automata::image_hom(d.language(), d.eval_map(), false);
  for (const auto& x : lang.alphabet()) p.alphabet.rank_of(x);
  const Word word = parse_word(o.word);
  std::optional<wp::Frontier> resume;
  if (!o.resume.empty()) {
    std::ifstream f(o.resume);
    if (!f) throw UsageError("cannot read '" + o.resume + "'");
    std::ostringstream s;
    s << f.rdbuf();
    resume = wp::Frontier::from_json(s.str());
  }
  wp::LanguageEnumerator f(lang);
  wp::NormalClosureEnumerator g(p);
  wp::WpVerdict v;
  try {
    v = wp::decide_word(p, word, f, g, o.budget, resume);
  } catch (const wp::InconsistentInputs& e) {
    err << "error: " << e.what() << '\n';
    return kViolation;
  }
  const char* sep = o.porcelain ? "\t" : ": ";
  out << "verdict" << sep << wp::to_string(v.kind) << '\n';
  if (v.kind == wp::WpVerdict::Kind::in_wp) out << "certificate" << sep << "g=" << v.certificate_i << '\n';
  if (v.kind == wp::WpVerdict::Kind::not_in_wp)
    out << "certificate" << sep << "f=" << v.certificate_j << " g=" << v.certificate_k << '\n';
  out << "comparisons" << sep << v.frontier.comparisons << '\n';
  if (v.streams_exhausted) out << "streams exhausted" << sep << "yes\n";
  if (v.kind == wp::WpVerdict::Kind::budget_exceeded) {
    out << "frontier" << sep << v.frontier.to_json() << '\n';
    if (!o.save.empty()) {
      std::ofstream s(o.save);
      if (!s) throw Error("cannot write '" + o.save + "'");
      s << v.frontier.to_json() << '\n';
    }
  } else {
    wp::LanguageEnumerator f2(lang);
    wp::NormalClosureEnumerator g2(p);
    out << "replay" << sep << (wp::replay_certificate(p, word, v, f2, g2) ? "ok" : "FAILED") << '\n';
  }
  return kOk;
}

int wp_coword(const Workspace& w, const Options& o, std::ostream& out) {
  auto e = wp::coword_demo_from_wp(w.group(o.group));
  for (std::size_t i = 0; i < o.count; ++i) {
    auto em = e->next();
    if (!em) break;
    out << em->index << (o.porcelain ? "\t" : ": ") << to_string(em->word) << '\n';
  }
  return kOk;
}

}  // namespace

int run(const Workspace& base, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Demonstrations of the coword problem: construction and bounded verification", "epic"};
  app.require_subcommand(1);

  auto inputs = [&](CLI::App* c) {
    c->add_option("files", o.files, "Block files to load");
    c->add_option("-f,--file", o.files, "Block file to load (repeatable)")->allow_extra_args(false);
  };
  auto out_flags = [&](CLI::App* c) {
    c->add_option("--name", o.name, "Name of the constructed object")->capture_default_str();
    c->add_option("-o,--out", o.out_file, "Write the block file here instead of stdout");
  };

  auto* verify_cmd = app.add_subcommand("verify", "Bounded verification of a demonstration");
  inputs(verify_cmd);
  verify_cmd->add_option("--demo", o.demo, "Demonstration name, or builtin:z, builtin:free:K, builtin:zk:K");
  verify_cmd->add_option("--builtin", o.builtin, "Builtin demonstration, e.g. \"free 2\"");
  verify_cmd->add_option("--max-len", o.max_len, "Length bound for the identity check")->required();
  verify_cmd->add_option("--ball", o.ball, "Coverage radius");
  verify_cmd->add_option("--search-len", o.search, "Coverage search length (default: --max-len)");
  verify_cmd->add_option("--complete-at", o.complete, "For finite groups, misses fail once the search length reaches this");
  verify_cmd->add_flag("--porcelain", o.porcelain, "One tab separated record per line");

  auto* enum_cmd = app.add_subcommand("enumerate", "Accepted words in length-lex order");
  inputs(enum_cmd);
  enum_cmd->add_option("--automaton", o.automaton);
  enum_cmd->add_option("--demo", o.demo);
  enum_cmd->add_option("--max-len", o.max_len)->required();

  auto* ball_cmd = app.add_subcommand("ball", "Elements of a ball with length-lex least witnesses");
  inputs(ball_cmd);
  ball_cmd->add_option("--group", o.group)->required();
  ball_cmd->add_option("--radius", o.radius)->required();
  ball_cmd->add_flag("--porcelain", o.porcelain);

  auto* render_cmd = app.add_subcommand("render", "Print the loaded workspace in normalized block form");
  inputs(render_cmd);

  auto* construct = app.add_subcommand("construct", "Build a new demonstration or automaton");
  construct->require_subcommand(1);

  auto* cg = construct->add_subcommand("change-gens", "Re-express a demonstration over new generators");
  inputs(cg);
  out_flags(cg);
  cg->add_option("--demo", o.demo)->required();
  cg->add_option("--letter", o.letters, "New letter and its oracle word, y=WORD (repeatable, in alphabet order)")->allow_extra_args(false);
  cg->add_option("--map", o.maps, "Image of an old letter, x=WORD over the new letters")->allow_extra_args(false);
  cg->add_option("--search", o.search, "Find the images by search up to this length instead of --map");

  auto* ext = construct->add_subcommand("extension", "Demonstration for an extension of N by Q");
  inputs(ext);
  out_flags(ext);
  ext->add_option("--n-demo", o.n_demo)->required();
  ext->add_option("--q-demo", o.q_demo)->required();
  ext->add_option("--group", o.group, "Extension group")->required();
  ext->add_option("--lift", o.lifts, "Word in the extension group for a letter, x=WORD")->allow_extra_args(false);
  ext->add_option("--in-n-radius", o.in_radius, "N membership: words of the N demonstration up to this length (default 6)");
  ext->add_option("--check-len", o.check_len, "Length bound for the input checks (default 4)");

  auto* ovg = construct->add_subcommand("fi-overgroup", "Demonstration for a finite index overgroup");
  inputs(ovg);
  out_flags(ovg);
  ovg->add_option("--demo", o.demo)->required();
  ovg->add_option("--group", o.group, "Overgroup")->required();
  ovg->add_option("--transversal", o.transversal, "Transversal letter and its word, t=WORD")->required()->allow_extra_args(false);
  ovg->add_option("--lift", o.lifts, "Word in the overgroup for a letter, x=WORD")->allow_extra_args(false);
  ovg->add_option("--in-g-radius", o.in_radius, "Subgroup membership: demo words up to this length (default 6)");

  auto* sub = construct->add_subcommand("fi-subgroup", "Demonstration for a finite index subgroup");
  inputs(sub);
  out_flags(sub);
  sub->add_option("--demo", o.demo)->required();
  sub->add_option("--table", o.table, "Coset table of the subgroup")->required();

  auto* gp = construct->add_subcommand("graph-product", "Demonstration for a graph product");
  inputs(gp);
  out_flags(gp);
  gp->add_option("--vertex", o.vertices, "Vertex and its demonstration, v=DEMO (repeatable, in vertex order)")->required()->allow_extra_args(false);
  gp->add_option("--edge", o.edges, "Edge U,V (repeatable)")->allow_extra_args(false);

  auto* as = construct->add_subcommand("autostackable-project", "First-coordinate projection of a triple automaton");
  inputs(as);
  out_flags(as);
  as->add_option("--automaton", o.automaton)->required();

  auto* cs = construct->add_subcommand("cross-section", "Demonstration from a cross section");
  inputs(cs);
  out_flags(cs);
  cs->add_option("--automaton", o.automaton)->required();
  cs->add_option("--group", o.group)->required();
  cs->add_option("--identity-rep", o.identity_rep, "Representative of the identity (default eps)");

  auto* wp_cmd = app.add_subcommand("wp", "Word problem");
  wp_cmd->require_subcommand(1);
  auto* decide = wp_cmd->add_subcommand("decide", "Decide a word by dovetailing");
  inputs(decide);
  decide->add_option("--presentation", o.presentation)->required();
  decide->add_option("--demo", o.demo)->required();
  decide->add_option("--word", o.word)->required();
  decide->add_option("--budget", o.budget, "Comparisons allowed in this run")->capture_default_str();
  decide->add_option("--resume", o.resume, "Frontier file from an earlier run");
  decide->add_option("--save", o.save, "Write the frontier here when the budget runs out");
  decide->add_flag("--porcelain", o.porcelain);
  auto* coword = wp_cmd->add_subcommand("coword", "First words of the coword enumerator of a group");
  inputs(coword);
  coword->add_option("--group", o.group)->required();
  coword->add_option("--count", o.count)->capture_default_str();
  coword->add_flag("--porcelain", o.porcelain);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    Workspace w = merged(base, o.files);
    if (verify_cmd->parsed()) {
      if (o.demo.empty() == o.builtin.empty()) throw UsageError("verify needs exactly one of --demo and --builtin");
      return verify(w, o, out);
    }
    if (enum_cmd->parsed()) return enumerate_verb(w, o, out);
    if (ball_cmd->parsed()) return ball_verb(w, o, out);
    if (render_cmd->parsed()) return render_verb(w, out);
    if (cg->parsed()) return change_gens(w, o, out);
    if (ext->parsed()) return extension_verb(w, o, out, err);
    if (ovg->parsed()) return fi_overgroup_verb(w, o, out);
    if (sub->parsed()) return fi_subgroup_verb(w, o, out);
    if (gp->parsed()) return graph_product_verb(w, o, out);
    if (as->parsed()) return autostackable_verb(w, o, out);
    if (cs->parsed()) return cross_section_verb(w, o, out);
    if (decide->parsed()) return wp_decide(w, o, out, err);
    if (coword->parsed()) return wp_coword(w, o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const LoadError& e) {
    err << "load error: " << e.what() << '\n';
    return kUsage;
  } catch (const automata::LimitExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kViolation;
  } catch (const Error& e) {
    // unknown names and rejected inputs are usage problems
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return run(Workspace{}, args, out, err);
}

}  // namespace epic::cli
