#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "epic/automata.hpp"
#include "epic/constructions.hpp"
#include "epic/demonstrations.hpp"
#include "epic/groups.hpp"
#include "epic/wordproblem.hpp"

namespace epic::cli {

/// Load failure; the message carries "file:line:" when a location is known.
class LoadError : public Error {
 public:
  using Error::Error;
};

struct DemoEntry {
  // builtin demonstrations ("z", "free 2", "zk 2", "finite GROUP") carry only
  // their description; the other fields stay empty
  std::optional<std::string> builtin;
  std::string group;
  std::string automaton;
  std::vector<std::pair<Letter, Word>> letters;  // explicit evaluation lines
  std::optional<std::string> subgroup;           // coset table restricting coverage
  std::optional<demo::Demonstration> demo;
};

struct TableEntry {
  std::string group;
  constructions::CosetTable table;
};

/// Named groups, automata, demonstrations, coset tables and presentations
/// from one or more block files. Each kind has its own flat namespace.
struct Workspace {
  std::map<std::string, groups::OraclePtr> groups;
  std::map<std::string, automata::Nfa> automata;
  std::map<std::string, DemoEntry> demos;
  std::map<std::string, TableEntry> tables;
  std::map<std::string, wp::Presentation> presentations;
  // declaration order per kind, used when rendering
  std::vector<std::string> group_order, automaton_order, demo_order, table_order, presentation_order;

  const groups::OraclePtr& group(const std::string& name) const;
  const automata::Nfa& automaton(const std::string& name) const;
  const demo::Demonstration& demonstration(const std::string& name) const;
  const TableEntry& table(const std::string& name) const;
  const wp::Presentation& presentation(const std::string& name) const;

  void add_group(const std::string& name, groups::OraclePtr g);
  void add_automaton(const std::string& name, automata::Nfa a);
  void add_demo(const std::string& name, DemoEntry d);
  void add_table(const std::string& name, TableEntry t);
  void add_presentation(const std::string& name, wp::Presentation p);

  /// Name under which `g` is registered, if any.
  std::optional<std::string> name_of(const groups::GroupOracle* g) const;

  /// The demonstration plus everything it references.
  Workspace closure_of_demo(const std::string& name) const;
};

Workspace parse_workspace(const std::string& text, const std::string& source = "<input>");
Workspace load(const std::vector<std::string>& paths);

/// Block file text; parsing it yields an equal workspace.
std::string render(const Workspace& w);
std::string render_automaton(const std::string& name, const automata::Nfa& a);

/// Builtin demonstration from a description such as "z", "free 2", "zk 3" or
/// "finite GROUP" (GROUP resolved in `w`).
demo::Demonstration make_builtin(const std::string& desc, const Workspace& w);

}  // namespace epic::cli
