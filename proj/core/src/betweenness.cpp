#include "afc/betweenness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace afc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative tolerance for treating two path lengths as equal. Accumulated
// float sums along distinct geodesics of the same true length may differ in
// the last bits; ties must be detected stably.
constexpr double kTieRelTol = 1e-12;

inline bool same_length(double a, double b) {
  return std::abs(a - b) <= kTieRelTol * std::max({std::abs(a), std::abs(b), 1.0});
}

struct SsspResult {
  std::vector<double> dist;
  std::vector<double> sigma;
  std::vector<std::vector<NodeId>> preds;
  std::vector<NodeId> settle_order;
};

SsspResult dijkstra_counting(const WorkingGraph& graph, NodeId source) {
  const int n = graph.node_count();
  SsspResult r;
  r.dist.assign(n, kInf);
  r.sigma.assign(n, 0.0);
  r.preds.assign(n, {});
  r.settle_order.reserve(n);
  r.dist[source] = 0.0;
  r.sigma[source] = 1.0;

  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.emplace(0.0, source);
  std::vector<char> settled(n, 0);

  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (settled[u]) {
      continue;
    }
    settled[u] = 1;
    r.settle_order.push_back(u);
    for (auto [w, len] : graph.neighbors(u)) {
      const double cand = r.dist[u] + len;
      if (settled[w]) {
        continue;
      }
      if (!std::isfinite(r.dist[w]) ||
          (cand < r.dist[w] && !same_length(cand, r.dist[w]))) {
        r.dist[w] = cand;
        r.sigma[w] = r.sigma[u];
        r.preds[w].assign(1, u);
        heap.emplace(cand, w);
      } else if (same_length(cand, r.dist[w])) {
        r.sigma[w] += r.sigma[u];
        r.preds[w].push_back(u);
      }
    }
  }
  return r;
}

void accumulate_from_source(const WorkingGraph& graph, NodeId source,
                            std::vector<double>& centrality) {
  const SsspResult sp = dijkstra_counting(graph, source);
  std::vector<double> delta(graph.node_count(), 0.0);
  for (auto it = sp.settle_order.rbegin(); it != sp.settle_order.rend(); ++it) {
    const NodeId w = *it;
    for (NodeId v : sp.preds[w]) {
      delta[v] += sp.sigma[v] / sp.sigma[w] * (1.0 + delta[w]);
    }
    if (w != source) {
      centrality[w] += delta[w];
    }
  }
}

}  // namespace

ShortestPathCounts shortest_path_counts(const WorkingGraph& graph,
                                        NodeId source) {
  SsspResult sp = dijkstra_counting(graph, source);
  return {std::move(sp.dist), std::move(sp.sigma)};
}

BetweennessVector betweenness(const WorkingGraph& graph) {
  BetweennessVector centrality(graph.node_count(), 0.0);
  for (NodeId s = 0; s < graph.node_count(); ++s) {
    accumulate_from_source(graph, s, centrality);
  }
  return centrality;
}

BetweennessVector betweenness_within_component(const WorkingGraph& graph,
                                               int component) {
  BetweennessVector centrality(graph.node_count(), 0.0);
  for (NodeId s : graph.component_members(component)) {
    accumulate_from_source(graph, s, centrality);
  }
  return centrality;
}

std::vector<NodeId> ranked_component(NodeId anchor, const WorkingGraph& graph) {
  const int component = graph.component_of(anchor);
  const BetweennessVector values =
      betweenness_within_component(graph, component);
  std::vector<NodeId> order = graph.component_members(component);
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    if (values[a] != values[b]) {
      return values[a] > values[b];
    }
    return a < b;
  });
  return order;
}

NodeId local_center(NodeId anchor, const WorkingGraph& graph, int k_min) {
  if (graph.component_size_of(anchor) < k_min) {
    return kNoNode;
  }
  const int component = graph.component_of(anchor);
  const BetweennessVector values =
      betweenness_within_component(graph, component);
  NodeId best = kNoNode;
  for (NodeId v : graph.component_members(component)) {
    if (best == kNoNode || values[v] > values[best]) {
      best = v;  // members are ascending, so ties keep the smallest index
    }
  }
  return best;
}

std::vector<NodeId> local_topk(NodeId anchor, const WorkingGraph& graph,
                               int k, int k_min) {
  if (graph.component_size_of(anchor) < k_min) {
    return {};
  }
  std::vector<NodeId> order = ranked_component(anchor, graph);
  const int take = std::min<int>(k, static_cast<int>(order.size()));
  order.resize(take);
  return order;
}

}  // namespace afc
