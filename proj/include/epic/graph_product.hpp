#pragma once

#include <string>
#include <vector>

#include "epic/groups.hpp"

namespace epic::groups {

/// Finite simple graph whose vertex order is the declaration order.
class VertexGraph {
 public:
  VertexGraph() = default;
  explicit VertexGraph(std::vector<std::string> vertices);

  /// Throws on loops, unknown vertices, and repeated edges.
  void add_edge(const std::string& u, const std::string& v);
  void add_edge(std::size_t u, std::size_t v);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t v) const { return names_.at(v); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t index(const std::string& name) const;
  bool adjacent(std::size_t u, std::size_t v) const { return adjacency_[u * names_.size() + v]; }
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

 private:
  std::vector<std::string> names_;
  std::vector<bool> adjacency_;
};

/// A maximal single-vertex substring of a word.
struct LocalString {
  std::size_t vertex;
  Word word;
};

struct LocalDecomposition {
  std::vector<LocalString> parts;

  std::vector<std::size_t> type() const;
  std::size_t global_length() const { return parts.size(); }
};

/// Result of pruning: local strings that are non-trivial in their vertex
/// groups, no two of the same vertex can be shuffled together, and the type is
/// ShortLex-least in its shuffle class.
struct PrunedWord {
  struct Syllable {
    std::size_t vertex;
    Word word;
    ElementKey local_key;
  };
  std::vector<Syllable> syllables;

  Word word() const;
  std::vector<std::size_t> type() const;
};

/// Graph product of vertex groups with pairwise disjoint alphabets.
class GraphProductOracle final : public GroupOracle {
 public:
  GraphProductOracle(VertexGraph graph, std::vector<OraclePtr> vertex_groups);

  const VertexGraph& graph() const noexcept { return graph_; }
  const OraclePtr& vertex_group(std::size_t v) const { return vertex_groups_.at(v); }
  std::size_t vertex_of(const Letter& x) const { return letter_vertex_[position(x)]; }

  LocalDecomposition decompose(const Word& w) const;
  PrunedWord prune(const Word& w) const;

  ElementKey evaluate(const Word& w) const override;
  ElementKey identity_key() const override;
  std::string kind() const override { return "graphproduct"; }
  bool is_finite() const override;

 private:
  VertexGraph graph_;
  std::vector<OraclePtr> vertex_groups_;
  std::vector<std::size_t> letter_vertex_;
};

}  // namespace epic::groups
