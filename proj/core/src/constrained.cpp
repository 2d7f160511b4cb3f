#include "afc/constrained.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <string>
#include <thread>

#include "afc/afc.hpp"
#include "afc/betweenness.hpp"
#include "afc/errors.hpp"

namespace afc {

void TargetPool::validate(int node_count) const {
  if (pool.empty()) {
    throw ConfigError("target pool is empty");
  }
  std::set<NodeId> members;
  for (const auto& primitive : primitives) {
    for (NodeId v : primitive) {
      if (v < 0 || v >= node_count) {
        throw ConfigError("primitive node out of range");
      }
      members.insert(v);
    }
  }
  if (std::set<NodeId>(pool.begin(), pool.end()) != members) {
    throw ConfigError("pool must equal the union of its primitives");
  }
  if (fallback) {
    if (fallback->representative < 0 ||
        fallback->representative >= node_count) {
      throw ConfigError("fallback representative out of range");
    }
    if (!fallback->reserve.empty()) {
      for (NodeId v : fallback->reserve) {
        if (members.count(v) > 0) {
          throw ConfigError("fallback reserve must be disjoint from the pool");
        }
      }
      if (std::find(fallback->reserve.begin(), fallback->reserve.end(),
                    fallback->representative) == fallback->reserve.end()) {
        throw ConfigError("fallback representative must lie in the reserve");
      }
    }
  }
}

bool TargetPool::contains(NodeId v) const {
  return std::binary_search(pool.begin(), pool.end(), v);
}

TargetPool enumerate_clique_pool(const BaseTopology& base, int pool_size,
                                 bool with_fallback) {
  if (pool_size < 1) {
    throw ConfigError("pool_size must be at least 1");
  }
  const int n = base.node_count();
  std::vector<std::vector<char>> adjacent(n, std::vector<char>(n, 0));
  for (const Edge& e : base.edges()) {
    adjacent[e.u][e.v] = 1;
    adjacent[e.v][e.u] = 1;
  }
  const std::vector<int> degrees = base.degrees();

  struct Triangle {
    int degree_sum;
    std::array<NodeId, 3> nodes;  // ascending
  };
  std::vector<Triangle> triangles;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      if (!adjacent[a][b]) {
        continue;
      }
      for (NodeId c = b + 1; c < n; ++c) {
        if (adjacent[a][c] && adjacent[b][c]) {
          triangles.push_back(
              {degrees[a] + degrees[b] + degrees[c], {a, b, c}});
        }
      }
    }
  }
  if (triangles.empty()) {
    throw ConfigError("base topology has no triangles");
  }
  std::sort(triangles.begin(), triangles.end(),
            [](const Triangle& x, const Triangle& y) {
              if (x.degree_sum != y.degree_sum) {
                return x.degree_sum > y.degree_sum;
              }
              return x.nodes < y.nodes;
            });

  TargetPool result;
  result.truncated = static_cast<int>(triangles.size()) < pool_size;
  const int take = std::min<int>(pool_size, triangles.size());
  std::set<NodeId> members;
  for (int t = 0; t < take; ++t) {
    const auto& tri = triangles[t].nodes;
    result.primitives.push_back({tri[0], tri[1], tri[2]});
    members.insert(tri.begin(), tri.end());
  }
  result.pool.assign(members.begin(), members.end());
  if (with_fallback) {
    result.fallback = FallbackSpec{{}, result.primitives.front()[0]};
  }
  result.validate(n);
  return result;
}

StepSelector constrained_selector(const TargetPool& pool, int k, int k_min,
                                  ConstraintMode mode) {
  if (mode == ConstraintMode::kFallback && !pool.fallback) {
    throw ConfigError("fallback mode requires a fallback spec");
  }
  const NodeId fallback_node =
      pool.fallback ? pool.fallback->representative : kNoNode;
  return [pool, k, k_min, mode, fallback_node](
             NodeId anchor, const WorkingGraph& graph) -> NodeId {
    const std::vector<NodeId> candidates = local_topk(anchor, graph, k, k_min);
    if (candidates.empty()) {
      return kNoNode;  // invalid continuation
    }
    for (NodeId v : candidates) {
      if (pool.contains(v)) {
        return v;
      }
    }
    return mode == ConstraintMode::kHard ? kNoNode : fallback_node;
  };
}

ConstrainedKernel build_constrained_kernel(const RealizationModel& model,
                                           const BaseTopology& base,
                                           const TargetPool& pool, int k,
                                           ConstraintMode mode,
                                           const EstimateOptions& options) {
  if (options.samples_per_row < 1) {
    throw ConfigError("samples_per_row must be at least 1");
  }
  if (k < 1) {
    throw ConfigError("k must be at least 1");
  }
  pool.validate(base.node_count());
  if (mode == ConstraintMode::kFallback && !pool.fallback) {
    throw ConfigError("fallback mode requires a fallback spec");
  }
  model.validate(base);

  const int n = base.node_count();
  const int m = options.samples_per_row;
  const NodeId fallback_node =
      pool.fallback ? pool.fallback->representative : kNoNode;

  ConstrainedKernel result;
  result.mode = mode;
  result.kernel =
      AmcKernel{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n)};
  result.feasibility = Eigen::VectorXd::Zero(n);
  result.fallback_rate = Eigen::VectorXd::Zero(n);

  auto estimate_row = [&](NodeId i) {
    std::vector<long long> counts(n + 1, 0);
    long long feasible = 0;
    long long fallbacks = 0;
    for (int rep = 0; rep < m; ++rep) {
      Substream rng(options.master_seed, static_cast<std::uint64_t>(i),
                    static_cast<std::uint64_t>(rep));
      const Realization draw = realize(model, base, i, rng);
      NodeId next = kNoNode;
      if (!draw.stopped) {
        const std::vector<NodeId> candidates =
            local_topk(i, *draw.graph, k, model.k_min);
        if (!candidates.empty()) {
          for (NodeId v : candidates) {
            if (pool.contains(v)) {
              next = v;
              break;
            }
          }
          if (next != kNoNode) {
            ++feasible;
          } else if (mode == ConstraintMode::kFallback) {
            next = fallback_node;
            ++fallbacks;
          }
        }
      }
      ++counts[next == kNoNode ? n : next];
    }
    for (int j = 0; j < n; ++j) {
      result.kernel.transient(i, j) = static_cast<double>(counts[j]) / m;
    }
    result.kernel.leak(i) = static_cast<double>(counts[n]) / m;
    result.feasibility(i) = static_cast<double>(feasible) / m;
    result.fallback_rate(i) = static_cast<double>(fallbacks) / m;
  };

  for (NodeId i = 0; i < n; ++i) {
    estimate_row(i);
  }

  if (options.stabilize) {
    for (int i = 0; i < n; ++i) {
      if (result.kernel.leak(i) == 0.0) {
        result.kernel.transient.row(i) *= (1.0 - options.stabilize_floor);
        result.kernel.leak(i) = options.stabilize_floor;
        result.stabilized_rows.push_back(i);
      }
    }
  } else if (result.kernel.leak.maxCoeff() == 0.0) {
    throw NumericalError(
        "constrained kernel is non-absorbing: every sampled row has zero "
        "leak and stabilization is disabled");
  }
  result.kernel.validate();
  return result;
}

PoolStatistics pool_statistics(const ConstrainedKernel& constrained,
                               const Eigen::VectorXd& s,
                               const TargetPool& pool) {
  const int n = constrained.kernel.size();
  pool.validate(n);
  const AfcProfile profile = afc(constrained.kernel, s);

  PoolStatistics stats;
  stats.feasibility = constrained.feasibility;
  stats.mean_fallback_rate = constrained.fallback_rate.mean();

  double mass = 0.0;
  for (NodeId v : pool.pool) {
    mass += profile.b(v);
  }
  stats.pool_mass = mass;
  stats.within_pool = Eigen::VectorXd::Zero(n);
  if (mass > 0.0) {
    for (NodeId v : pool.pool) {
      stats.within_pool(v) = profile.b(v) / mass;
    }
  }

  std::vector<char> reserved(n, 0);
  if (pool.fallback) {
    for (NodeId v : pool.fallback->reserve) {
      reserved[v] = 1;
    }
  }
  double kept = 0.0;
  for (int v = 0; v < n; ++v) {
    if (!reserved[v]) {
      kept += profile.b(v);
    }
  }
  stats.censoring_mass = kept;
  stats.censored = Eigen::VectorXd::Zero(n);
  if (kept > 0.0) {
    for (int v = 0; v < n; ++v) {
      if (!reserved[v]) {
        stats.censored(v) = profile.b(v) / kept;
      }
    }
  }
  return stats;
}

}  // namespace afc
