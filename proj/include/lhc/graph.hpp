#pragma once

// Breadth-first exploration of the reduction relation. Nodes are identified
// by their alpha-canonical printed form, trails included.

#include <deque>
#include <functional>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "lhc/reduction.hpp"
#include "lhc/simplified.hpp"

namespace lhc {

template <class T, class E>
struct Graph {
  struct Node {
    T term;
    std::string key;
    std::size_t depth;       // BFS distance from the root
    bool normal = false;     // no successors
    bool truncated = false;  // at the depth bound, not expanded
  };
  struct Edge {
    std::size_t from;
    std::size_t to;
    E info;
  };

  std::vector<Node> nodes;
  std::vector<Edge> edges;

  bool complete() const {
    for (const auto& n : nodes)
      if (n.truncated) return false;
    return true;
  }

  std::vector<std::vector<std::size_t>> successors() const {
    std::vector<std::vector<std::size_t>> out(nodes.size());
    for (const auto& e : edges) out[e.from].push_back(e.to);
    return out;
  }

  /// Length of the longest path from the root, or nullopt on a cycle.
  std::optional<std::size_t> longest_path() const {
    auto succ = successors();
    enum Mark : char { unseen, active, done };
    std::vector<Mark> mark(nodes.size(), unseen);
    std::vector<std::size_t> len(nodes.size(), 0);
    bool cyclic = false;
    // Iterative post-order DFS.
    std::vector<std::pair<std::size_t, std::size_t>> stack;
    if (nodes.empty()) return 0;
    stack.push_back({0, 0});
    mark[0] = active;
    while (!stack.empty() && !cyclic) {
      auto& [v, i] = stack.back();
      if (i < succ[v].size()) {
        std::size_t w = succ[v][i++];
        if (mark[w] == active) cyclic = true;
        if (mark[w] == unseen) {
          mark[w] = active;
          stack.push_back({w, 0});
        }
        continue;
      }
      for (std::size_t w : succ[v]) len[v] = std::max(len[v], len[w] + 1);
      mark[v] = done;
      stack.pop_back();
    }
    if (cyclic) return std::nullopt;
    return len[0];
  }

  bool acyclic() const { return longest_path().has_value(); }
};

/// Explores from `root` breadth-first. Nodes at depth `fuel` are left
/// unexpanded and marked truncated; more than `max_nodes` nodes throws
/// BoundExceeded.
template <class T, class E>
Graph<T, E> explore(const T& root, const std::function<std::vector<std::pair<T, E>>(const T&)>& next,
                    std::size_t fuel, std::size_t max_nodes) {
  Graph<T, E> g;
  std::unordered_map<std::string, std::size_t> ids;
  auto intern = [&](const T& t, std::size_t depth) -> std::pair<std::size_t, bool> {
    std::string k = canonical_key(t);
    if (auto it = ids.find(k); it != ids.end()) return {it->second, false};
    if (g.nodes.size() >= max_nodes) throw BoundExceeded(max_nodes);
    ids.emplace(k, g.nodes.size());
    g.nodes.push_back({t, std::move(k), depth});
    return {g.nodes.size() - 1, true};
  };
  intern(root, 0);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    if (g.nodes[v].depth >= fuel) {
      g.nodes[v].truncated = true;
      continue;
    }
    auto succ = next(g.nodes[v].term);
    if (succ.empty()) g.nodes[v].normal = true;
    for (auto& [t, info] : succ) {
      auto [w, fresh] = intern(t, g.nodes[v].depth + 1);
      g.edges.push_back({v, w, std::move(info)});
      if (fresh) queue.push_back(w);
    }
  }
  return g;
}

using ReductionGraph = Graph<Term, StepInfo>;
using HsGraph = Graph<HsTerm, std::monostate>;

inline ReductionGraph reduction_graph(const Term& m, std::size_t fuel = 10000, std::size_t max_nodes = 50000) {
  detail::root_bang(m);
  return explore<Term, StepInfo>(m, step_all, fuel, max_nodes);
}

inline HsGraph hs_reduction_graph(const HsTerm& s, const TrailOracle& oracle, std::size_t fuel = 10000,
                                  std::size_t max_nodes = 50000) {
  return explore<HsTerm, std::monostate>(
      s,
      [&](const HsTerm& t) {
        std::vector<std::pair<HsTerm, std::monostate>> out;
        for (auto& x : hs_step(t, oracle)) out.emplace_back(std::move(x), std::monostate{});
        return out;
      },
      fuel, max_nodes);
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

/// Graphviz rendering; trails are elided from node labels unless requested.
inline std::string to_dot(const ReductionGraph& g, bool show_trail = false) {
  std::ostringstream out;
  out << "digraph reduction {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    out << "  n" << i << " [label=\"" << detail::dot_escape(show_trail ? pretty(n.term) : pretty_elided(n.term))
        << "\"";
    if (n.normal) out << ", peripheries=2";
    out << "];\n";
  }
  for (const auto& e : g.edges)
    out << "  n" << e.from << " -> n" << e.to << " [label=\"" << rule_name(e.info.rule) << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace lhc
