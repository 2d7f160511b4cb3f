#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "afc/estimator.hpp"
#include "afc/kernel.hpp"

namespace afc {

// Reward families attached to the one-step simulator. All of them reduce
// to an expected one-step reward vector psi evaluated on the same chain.

struct NodeReward {
  Eigen::VectorXd values;  // psi = values, no sampling needed
};

// eta(i, next); next == kNoNode denotes the absorbing outcome. Rewards
// from the absorbing state itself are identically zero.
struct TransitionReward {
  std::function<double(NodeId, NodeId)> eta;
};

// Sum of gamma over the realized local top-k candidate set; an absorbed
// draw contributes an empty set.
struct ValuedTopkReward {
  int k = 1;
  Eigen::VectorXd gamma;
};

// Same, intersected with a fixed candidate pool.
struct PoolTopkReward {
  int k = 1;
  std::vector<NodeId> pool;
  Eigen::VectorXd gamma;
};

using RewardSpec = std::variant<NodeReward, TransitionReward,
                                ValuedTopkReward, PoolTopkReward>;

// Reward-weighted AFC: s N psi / s N 1. For node rewards this equals the
// inner product b(s) . f.
double reward_afc(const AmcKernel& kernel, const Eigen::VectorXd& s,
                  const Eigen::VectorXd& psi);

// Expected one-step reward vector. Node rewards return their values;
// transition rewards reduce exactly through a kernel estimated from the
// same (M, seed) draws; the top-k families are averaged over M simulator
// draws per row using the (row, replicate) substreams, so they reuse the
// exact draws of a kernel estimated with the same seed.
Eigen::VectorXd estimate_psi(const RewardSpec& spec,
                             const RealizationModel& model,
                             const BaseTopology& base, int samples_per_row,
                             std::uint64_t seed);

// Exact reduction of a transition reward on a known kernel:
// psi_i = sum_j Q_ij eta(i,j) + r_i eta(i, absorb).
Eigen::VectorXd transition_psi(const AmcKernel& kernel,
                               const std::function<double(NodeId, NodeId)>& eta);

// eta counting strict center changes (1 when the next state is a
// different node, 0 on self-transitions and absorption).
TransitionReward switching_reward();

// eta counting nonnegative one-step increases of a node score f:
// max(f(next) - f(current), 0), zero on absorption.
TransitionReward improvement_reward(const Eigen::VectorXd& f);

// Distance-decayed hub score: hubs are the n_hubs highest-degree nodes of
// the base topology (smallest index on ties) with reward levels[h]; then
// f(v) = max_h levels[h] * beta^{hop distance(v, hub_h)}, and 0 when v is
// unreachable from every hub.
Eigen::VectorXd reward_f_from_hubs(const BaseTopology& base, int n_hubs,
                                   const std::vector<double>& levels,
                                   double beta);

}  // namespace afc
