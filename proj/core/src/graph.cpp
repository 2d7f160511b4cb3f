#include "afc/graph.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "afc/errors.hpp"

namespace afc {

namespace {

std::vector<std::vector<std::pair<NodeId, double>>> build_adjacency(
    int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<std::pair<NodeId, double>>> adjacency(n);
  for (const Edge& e : edges) {
    adjacency[e.u].emplace_back(e.v, e.weight);
    adjacency[e.v].emplace_back(e.u, e.weight);
  }
  return adjacency;
}

}  // namespace

BaseTopology::BaseTopology(int node_count, std::vector<Edge> edges,
                           std::vector<std::string> labels)
    : n_(node_count), edges_(std::move(edges)), labels_(std::move(labels)) {
  if (n_ <= 0) {
    throw ConfigError("topology must have at least one node");
  }
  std::set<std::pair<NodeId, NodeId>> seen;
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_) {
      throw ConfigError("edge endpoint out of range: (" +
                        std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    }
    if (e.u == e.v) {
      throw ConfigError("self-loop at node " + std::to_string(e.u));
    }
    if (!(e.weight > 0.0)) {
      throw ConfigError("nonpositive weight on edge (" + std::to_string(e.u) +
                        "," + std::to_string(e.v) + ")");
    }
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second) {
      throw ConfigError("duplicate edge (" + std::to_string(key.first) + "," +
                        std::to_string(key.second) + ")");
    }
  }
  if (labels_.empty()) {
    labels_.reserve(n_);
    for (int v = 0; v < n_; ++v) {
      labels_.push_back(std::to_string(v));
    }
  } else if (static_cast<int>(labels_.size()) != n_) {
    throw ConfigError("label count does not match node count");
  }
  adjacency_ = build_adjacency(n_, edges_);
}

std::vector<int> BaseTopology::degrees() const {
  std::vector<int> deg(n_, 0);
  for (const Edge& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

std::vector<NodeId> BaseTopology::hop_ball(NodeId center, int radius) const {
  std::vector<int> depth(n_, -1);
  depth[center] = 0;
  std::vector<NodeId> frontier{center};
  std::vector<NodeId> ball{center};
  for (int hop = 0; hop < radius && !frontier.empty(); ++hop) {
    std::vector<NodeId> next;
    for (NodeId u : frontier) {
      for (auto [w, weight] : adjacency_[u]) {
        (void)weight;
        if (depth[w] < 0) {
          depth[w] = hop + 1;
          next.push_back(w);
          ball.push_back(w);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(ball.begin(), ball.end());
  return ball;
}

WorkingGraph::WorkingGraph(int node_count, std::vector<Edge> active_edges)
    : n_(node_count), edges_(std::move(active_edges)) {
  adjacency_ = build_adjacency(n_, edges_);
  component_of_.assign(n_, -1);
  std::vector<NodeId> stack;
  for (NodeId start = 0; start < n_; ++start) {
    if (component_of_[start] >= 0) {
      continue;
    }
    const int id = static_cast<int>(components_.size());
    components_.emplace_back();
    component_of_[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      components_[id].push_back(u);
      for (auto [w, weight] : adjacency_[u]) {
        (void)weight;
        if (component_of_[w] < 0) {
          component_of_[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(components_[id].begin(), components_[id].end());
  }
}

}  // namespace afc
