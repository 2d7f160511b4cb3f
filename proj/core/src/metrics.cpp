#include "afc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "afc/betweenness.hpp"
#include "afc/errors.hpp"

namespace afc {

double kl_divergence(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                     double pseudocount) {
  if (p.size() != q.size()) {
    throw ConfigError("KL arguments have different lengths");
  }
  const Eigen::VectorXd ps = (p.array() + pseudocount).matrix();
  const Eigen::VectorXd qs = (q.array() + pseudocount).matrix();
  const double psum = ps.sum();
  const double qsum = qs.sum();
  double kl = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    const double pi = ps(i) / psum;
    const double qi = qs(i) / qsum;
    kl += pi * std::log(pi / qi);
  }
  return std::max(kl, 0.0);
}

double total_variation(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  if (p.size() != q.size()) {
    throw ConfigError("TV arguments have different lengths");
  }
  return 0.5 * (p - q).lpNorm<1>();
}

GroundMetric::GroundMetric(Eigen::MatrixXd distances)
    : distances_(std::move(distances)) {
  const int n = static_cast<int>(distances_.rows());
  if (distances_.cols() != n) {
    throw ConfigError("ground metric must be square");
  }
  for (int i = 0; i < n; ++i) {
    if (distances_(i, i) != 0.0) {
      throw ConfigError("ground metric must have a zero diagonal");
    }
    for (int j = 0; j < n; ++j) {
      const double d = distances_(i, j);
      if (!std::isfinite(d) || d < 0.0) {
        throw ConfigError("ground metric entries must be finite nonnegative");
      }
      if (std::abs(d - distances_(j, i)) > 1e-12) {
        throw ConfigError("ground metric must be symmetric");
      }
    }
  }
  // O(n^3) triangle check; skipped above the sizes this library targets.
  if (n <= 300) {
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        const double dik = distances_(i, k);
        for (int j = 0; j < n; ++j) {
          if (distances_(i, j) > dik + distances_(k, j) + 1e-9) {
            throw ConfigError("ground metric violates the triangle inequality");
          }
        }
      }
    }
  }
}

GroundMetric shortest_path_ground_metric(const BaseTopology& base) {
  const int n = base.node_count();
  const WorkingGraph graph(n, base.edges());
  Eigen::MatrixXd d(n, n);
  double max_finite = 0.0;
  for (NodeId s = 0; s < n; ++s) {
    const ShortestPathCounts sp = shortest_path_counts(graph, s);
    for (int t = 0; t < n; ++t) {
      d(s, t) = sp.distance[t];
      if (std::isfinite(sp.distance[t])) {
        max_finite = std::max(max_finite, sp.distance[t]);
      }
    }
  }
  const double far = max_finite + 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(d(i, j))) {
        d(i, j) = far;
      }
    }
  }
  return GroundMetric(std::move(d));
}

namespace {

// Minimal successive-shortest-path min-cost flow on the bipartite
// transportation graph. Sizes here are small (supports of two AFC
// vectors), so a dense-ish Dijkstra per augmentation is plenty.
struct FlowArc {
  int to;
  double capacity;
  double cost;
  int reverse_index;
};

class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : adjacency_(nodes) {}

  void add_arc(int from, int to, double capacity, double cost) {
    adjacency_[from].push_back(
        {to, capacity, cost, static_cast<int>(adjacency_[to].size())});
    adjacency_[to].push_back(
        {from, 0.0, -cost, static_cast<int>(adjacency_[from].size()) - 1});
  }

  // Routes as much flow as possible from source to sink; returns the total
  // cost of the routed flow.
  double min_cost_max_flow(int source, int sink) {
    const int n = static_cast<int>(adjacency_.size());
    std::vector<double> potential(n, 0.0);
    double total_cost = 0.0;
    constexpr double kEps = 1e-15;

    for (;;) {
      std::vector<double> dist(n, std::numeric_limits<double>::infinity());
      std::vector<int> prev_node(n, -1), prev_arc(n, -1);
      dist[source] = 0.0;
      using Item = std::pair<double, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
      heap.emplace(0.0, source);
      while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u] + kEps) {
          continue;
        }
        for (int a = 0; a < static_cast<int>(adjacency_[u].size()); ++a) {
          const FlowArc& arc = adjacency_[u][a];
          if (arc.capacity <= kEps) {
            continue;
          }
          const double reduced =
              std::max(arc.cost + potential[u] - potential[arc.to], 0.0);
          if (dist[u] + reduced < dist[arc.to] - kEps) {
            dist[arc.to] = dist[u] + reduced;
            prev_node[arc.to] = u;
            prev_arc[arc.to] = a;
            heap.emplace(dist[arc.to], arc.to);
          }
        }
      }
      if (!std::isfinite(dist[sink])) {
        break;
      }
      for (int v = 0; v < n; ++v) {
        if (std::isfinite(dist[v])) {
          potential[v] += dist[v];
        }
      }
      double push = std::numeric_limits<double>::infinity();
      for (int v = sink; v != source; v = prev_node[v]) {
        push = std::min(push, adjacency_[prev_node[v]][prev_arc[v]].capacity);
      }
      if (push <= kEps) {
        break;
      }
      for (int v = sink; v != source; v = prev_node[v]) {
        FlowArc& arc = adjacency_[prev_node[v]][prev_arc[v]];
        arc.capacity -= push;
        adjacency_[arc.to][arc.reverse_index].capacity += push;
        total_cost += push * arc.cost;
      }
    }
    return total_cost;
  }

 private:
  std::vector<std::vector<FlowArc>> adjacency_;
};

}  // namespace

double wasserstein1(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                    const GroundMetric& metric) {
  const int n = metric.size();
  if (p.size() != n || q.size() != n) {
    throw ConfigError("distribution length does not match the ground metric");
  }
  if (std::abs(p.sum() - q.sum()) > 1e-9) {
    throw ConfigError("W1 requires equal total mass");
  }

  // Mass shared between p and q stays in place (zero cost under a metric),
  // so only the signed difference has to be transported.
  std::vector<int> supply_ids, demand_ids;
  std::vector<double> supply, demand;
  for (int i = 0; i < n; ++i) {
    const double diff = p(i) - q(i);
    if (diff > 1e-15) {
      supply_ids.push_back(i);
      supply.push_back(diff);
    } else if (diff < -1e-15) {
      demand_ids.push_back(i);
      demand.push_back(-diff);
    }
  }
  if (supply_ids.empty() || demand_ids.empty()) {
    return 0.0;
  }

  const int ns = static_cast<int>(supply_ids.size());
  const int nd = static_cast<int>(demand_ids.size());
  const int source = ns + nd;
  const int sink = source + 1;
  FlowNetwork network(ns + nd + 2);
  for (int i = 0; i < ns; ++i) {
    network.add_arc(source, i, supply[i], 0.0);
  }
  for (int j = 0; j < nd; ++j) {
    network.add_arc(ns + j, sink, demand[j], 0.0);
  }
  for (int i = 0; i < ns; ++i) {
    for (int j = 0; j < nd; ++j) {
      network.add_arc(i, ns + j, std::numeric_limits<double>::infinity(),
                      metric(supply_ids[i], demand_ids[j]));
    }
  }
  return network.min_cost_max_flow(source, sink);
}

}  // namespace afc
