#include "afc/reward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "afc/afc.hpp"
#include "afc/betweenness.hpp"
#include "afc/errors.hpp"

namespace afc {

double reward_afc(const AmcKernel& kernel, const Eigen::VectorXd& s,
                  const Eigen::VectorXd& psi) {
  if (psi.size() != kernel.size()) {
    throw ConfigError("psi length does not match the kernel");
  }
  if (psi.minCoeff() < 0.0) {
    throw ConfigError("psi must be nonnegative");
  }
  const AfcProfile profile = afc(kernel, s);
  return profile.mu.dot(psi) / profile.expected_steps;
}

namespace {

// Mean simulator-draw reward per row; the (row, replicate) substreams make
// the draws identical to a kernel estimated with the same seed and M.
Eigen::VectorXd sampled_topk_psi(const RealizationModel& model,
                                 const BaseTopology& base, int samples_per_row,
                                 std::uint64_t seed, int k,
                                 const Eigen::VectorXd& gamma,
                                 const std::vector<NodeId>* pool) {
  if (samples_per_row < 1) {
    throw ConfigError("samples_per_row must be at least 1");
  }
  if (gamma.size() != base.node_count()) {
    throw ConfigError("gamma length does not match the node count");
  }
  std::vector<char> in_pool;
  if (pool != nullptr) {
    in_pool.assign(base.node_count(), 0);
    for (NodeId v : *pool) {
      in_pool[v] = 1;
    }
  }

  const int n = base.node_count();
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(n);
  for (NodeId i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int rep = 0; rep < samples_per_row; ++rep) {
      Substream rng(seed, static_cast<std::uint64_t>(i),
                    static_cast<std::uint64_t>(rep));
      const Realization draw = realize(model, base, i, rng);
      if (draw.stopped) {
        continue;
      }
      for (NodeId v : local_topk(i, *draw.graph, k, model.k_min)) {
        if (pool == nullptr || in_pool[v]) {
          sum += gamma(v);
        }
      }
    }
    psi(i) = sum / samples_per_row;
  }
  return psi;
}

}  // namespace

Eigen::VectorXd estimate_psi(const RewardSpec& spec,
                             const RealizationModel& model,
                             const BaseTopology& base, int samples_per_row,
                             std::uint64_t seed) {
  return std::visit(
      [&](const auto& reward) -> Eigen::VectorXd {
        using T = std::decay_t<decltype(reward)>;
        if constexpr (std::is_same_v<T, NodeReward>) {
          if (reward.values.size() != base.node_count()) {
            throw ConfigError("node reward length mismatch");
          }
          return reward.values;
        } else if constexpr (std::is_same_v<T, TransitionReward>) {
          EstimateOptions options;
          options.samples_per_row = samples_per_row;
          options.master_seed = seed;
          options.stabilize = false;
          return transition_psi(estimate_kernel(model, base, options).kernel,
                                reward.eta);
        } else if constexpr (std::is_same_v<T, ValuedTopkReward>) {
          return sampled_topk_psi(model, base, samples_per_row, seed, reward.k,
                                  reward.gamma, nullptr);
        } else {
          return sampled_topk_psi(model, base, samples_per_row, seed, reward.k,
                                  reward.gamma, &reward.pool);
        }
      },
      spec);
}

Eigen::VectorXd transition_psi(
    const AmcKernel& kernel,
    const std::function<double(NodeId, NodeId)>& eta) {
  const int n = kernel.size();
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(n);
  for (NodeId i = 0; i < n; ++i) {
    double value = kernel.leak(i) * eta(i, kNoNode);
    for (NodeId j = 0; j < n; ++j) {
      if (kernel.transient(i, j) > 0.0) {
        value += kernel.transient(i, j) * eta(i, j);
      }
    }
    psi(i) = value;
  }
  return psi;
}

TransitionReward switching_reward() {
  return {[](NodeId i, NodeId j) {
    return (j != kNoNode && j != i) ? 1.0 : 0.0;
  }};
}

TransitionReward improvement_reward(const Eigen::VectorXd& f) {
  return {[f](NodeId i, NodeId j) {
    if (j == kNoNode) {
      return 0.0;
    }
    return std::max(f(j) - f(i), 0.0);
  }};
}

Eigen::VectorXd reward_f_from_hubs(const BaseTopology& base, int n_hubs,
                                   const std::vector<double>& levels,
                                   double beta) {
  if (n_hubs < 1) {
    throw ConfigError("n_hubs must be at least 1");
  }
  if (static_cast<int>(levels.size()) != n_hubs) {
    throw ConfigError("one reward level per hub is required");
  }
  if (beta <= 0.0 || beta >= 1.0) {
    throw ConfigError("beta must lie in (0,1)");
  }
  const int n = base.node_count();
  const std::vector<int> degrees = base.degrees();
  std::vector<NodeId> order(n);
  for (int v = 0; v < n; ++v) {
    order[v] = v;
  }
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    if (degrees[a] != degrees[b]) {
      return degrees[a] > degrees[b];
    }
    return a < b;
  });
  const int hubs = std::min(n_hubs, n);

  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
  for (int h = 0; h < hubs; ++h) {
    // Hop distances from the hub via BFS.
    const NodeId hub = order[h];
    std::vector<int> dist(n, -1);
    dist[hub] = 0;
    std::queue<NodeId> queue;
    queue.push(hub);
    while (!queue.empty()) {
      const NodeId u = queue.front();
      queue.pop();
      for (auto [w, weight] : base.neighbors(u)) {
        (void)weight;
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          queue.push(w);
        }
      }
    }
    for (int v = 0; v < n; ++v) {
      if (dist[v] >= 0) {
        f(v) = std::max(f(v), levels[h] * std::pow(beta, dist[v]));
      }
    }
  }
  return f;
}

}  // namespace afc
