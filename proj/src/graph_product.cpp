#include "epic/graph_product.hpp"

#include <algorithm>

namespace epic::groups {

VertexGraph::VertexGraph(std::vector<std::string> vertices) : names_(std::move(vertices)) {
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (names_[i] == names_[j]) throw Error("vertex '" + names_[i] + "' declared twice");
  adjacency_.assign(names_.size() * names_.size(), false);
}

std::size_t VertexGraph::index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw Error("unknown vertex '" + name + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

void VertexGraph::add_edge(const std::string& u, const std::string& v) { add_edge(index(u), index(v)); }

void VertexGraph::add_edge(std::size_t u, std::size_t v) {
  if (u >= size() || v >= size()) throw Error("edge endpoint out of range");
  if (u == v) throw Error("loop at vertex '" + names_[u] + "' is not allowed");
  if (adjacent(u, v)) throw Error("repeated edge " + names_[u] + " " + names_[v]);
  adjacency_[u * size() + v] = true;
  adjacency_[v * size() + u] = true;
}

std::vector<std::pair<std::size_t, std::size_t>> VertexGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < size(); ++u)
    for (std::size_t v = u + 1; v < size(); ++v)
      if (adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

std::vector<std::size_t> LocalDecomposition::type() const {
  std::vector<std::size_t> t;
  for (const auto& p : parts) t.push_back(p.vertex);
  return t;
}

Word PrunedWord::word() const {
  Word w;
  for (const auto& s : syllables) w.insert(w.end(), s.word.begin(), s.word.end());
  return w;
}

std::vector<std::size_t> PrunedWord::type() const {
  std::vector<std::size_t> t;
  for (const auto& s : syllables) t.push_back(s.vertex);
  return t;
}

namespace {

std::vector<Letter> disjoint_union(const std::vector<OraclePtr>& groups) {
  std::vector<Letter> out;
  for (const auto& g : groups) {
    if (!g) throw Error("missing vertex group");
    for (const auto& x : g->alphabet()) {
      if (std::find(out.begin(), out.end(), x) != out.end())
        throw Error("vertex alphabets are not disjoint: letter '" + x.name() + "' repeats");
      out.push_back(x);
    }
  }
  return out;
}

}  // namespace

GraphProductOracle::GraphProductOracle(VertexGraph graph, std::vector<OraclePtr> vertex_groups)
    : GroupOracle(disjoint_union(vertex_groups)), graph_(std::move(graph)), vertex_groups_(std::move(vertex_groups)) {
  if (graph_.size() != vertex_groups_.size()) throw Error("graph product needs one group per vertex");
  for (std::size_t v = 0; v < vertex_groups_.size(); ++v)
    for (std::size_t i = 0; i < vertex_groups_[v]->alphabet().size(); ++i) letter_vertex_.push_back(v);
}

bool GraphProductOracle::is_finite() const {
  for (std::size_t u = 0; u < graph_.size(); ++u) {
    if (!vertex_groups_[u]->is_finite()) return false;
    for (std::size_t v = u + 1; v < graph_.size(); ++v)
      if (!graph_.adjacent(u, v)) return false;
  }
  return true;
}

LocalDecomposition GraphProductOracle::decompose(const Word& w) const {
  LocalDecomposition d;
  for (const auto& x : w) {
    std::size_t v = vertex_of(x);
    if (d.parts.empty() || d.parts.back().vertex != v) d.parts.push_back({v, {}});
    d.parts.back().word.push_back(x);
  }
  return d;
}

// Left-to-right reduction: each incoming local string is shuffled leftwards
// past commuting syllables and amalgamated with the first same-vertex
// syllable it meets, if any. The reduced syllable sequence is then put in
// lexicographic normal form by repeatedly taking the least vertex that can be
// shuffled to the front.
PrunedWord GraphProductOracle::prune(const Word& w) const {
  using Syllable = PrunedWord::Syllable;
  std::vector<Syllable> reduced;
  for (auto& part : decompose(w).parts) {
    const GroupOracle& local = *vertex_groups_[part.vertex];
    ElementKey key = local.evaluate(part.word);
    if (key == local.identity_key()) continue;
    std::size_t j = reduced.size();
    bool merge = false;
    while (j > 0) {
      const Syllable& s = reduced[j - 1];
      if (s.vertex == part.vertex) {
        merge = true;
        break;
      }
      if (!graph_.adjacent(s.vertex, part.vertex)) break;
      --j;
    }
    if (!merge) {
      reduced.push_back({part.vertex, std::move(part.word), std::move(key)});
      continue;
    }
    Syllable& target = reduced[j - 1];
    Word merged = concat(target.word, part.word);
    ElementKey merged_key = local.evaluate(merged);
    if (merged_key == local.identity_key()) {
      reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(j - 1));
    } else {
      target.word = std::move(merged);
      target.local_key = std::move(merged_key);
    }
  }

  PrunedWord out;
  std::vector<bool> taken(reduced.size(), false);
  for (std::size_t round = 0; round < reduced.size(); ++round) {
    std::size_t best = reduced.size();
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      if (taken[i]) continue;
      bool front = true;
      for (std::size_t k = 0; k < i && front; ++k)
        if (!taken[k] && !graph_.adjacent(reduced[k].vertex, reduced[i].vertex)) front = false;
      if (front && (best == reduced.size() || reduced[i].vertex < reduced[best].vertex)) best = i;
    }
    taken[best] = true;
    out.syllables.push_back(reduced[best]);
  }
  return out;
}

ElementKey GraphProductOracle::evaluate(const Word& w) const {
  std::string s = "gp:";
  for (const auto& syl : prune(w).syllables) {
    const std::string& k = syl.local_key.bytes();
    s += graph_.name(syl.vertex) + ":" + std::to_string(k.size()) + ":" + k + ";";
  }
  return ElementKey(std::move(s));
}

ElementKey GraphProductOracle::identity_key() const { return ElementKey("gp:"); }

}  // namespace epic::groups
