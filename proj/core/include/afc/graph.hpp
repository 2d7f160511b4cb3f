#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace afc {

using NodeId = int;

// Sentinel for "no node": an invalid continuation from local selection, or
// the absorbing outcome of a one-step sample.
inline constexpr NodeId kNoNode = -1;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 1.0;
};

// Fixed undirected base topology with strictly positive edge weights.
//
// Nodes are indexed 0..n-1; an optional display label per node is kept for
// ingested datasets (defaults to the decimal index).
class BaseTopology {
 public:
  BaseTopology(int node_count, std::vector<Edge> edges,
               std::vector<std::string> labels = {});

  int node_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& label(NodeId v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::span<const std::pair<NodeId, double>> neighbors(NodeId v) const {
    return adjacency_[v];
  }

  // Unweighted degree of every node.
  std::vector<int> degrees() const;

  // Nodes within `radius` hops of `center` (center included), ascending.
  std::vector<NodeId> hop_ball(NodeId center, int radius) const;

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::pair<NodeId, double>>> adjacency_;
};

// One realized working graph: the full node set plus the currently active
// edges. The component partition is computed at construction.
class WorkingGraph {
 public:
  WorkingGraph(int node_count, std::vector<Edge> active_edges);

  int node_count() const { return n_; }
  const std::vector<Edge>& active_edges() const { return edges_; }

  std::span<const std::pair<NodeId, double>> neighbors(NodeId v) const {
    return adjacency_[v];
  }

  int component_count() const { return static_cast<int>(components_.size()); }
  int component_of(NodeId v) const { return component_of_[v]; }
  // Members of one component, ascending by node id.
  const std::vector<NodeId>& component_members(int component) const {
    return components_[component];
  }
  int component_size_of(NodeId v) const {
    return static_cast<int>(components_[component_of_[v]].size());
  }

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<NodeId, double>>> adjacency_;
  std::vector<int> component_of_;
  std::vector<std::vector<NodeId>> components_;
};

}  // namespace afc
