#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "afc/estimator.hpp"
#include "afc/kernel.hpp"

namespace afc {

// Reserved continuation target for draws whose candidate set misses the
// pool. When `reserve` is nonempty it must be disjoint from the pool and
// contain the representative; an empty reserve leaves the representative
// free (it may then sit inside the pool itself).
struct FallbackSpec {
  std::vector<NodeId> reserve;  // V_fb, possibly empty
  NodeId representative = kNoNode;
};

// Deterministic target pool: the union of designated primitive shapes.
// Only the listed primitives count as targets; node combinations emerging
// from overlaps are not added.
struct TargetPool {
  std::vector<NodeId> pool;                   // sorted union of primitives
  std::vector<std::vector<NodeId>> primitives;
  std::optional<FallbackSpec> fallback;
  bool truncated = false;  // fewer primitives existed than requested

  void validate(int node_count) const;
  bool contains(NodeId v) const;
};

// All 3-cliques of the base topology, scored by the sum of member degrees;
// the pool is the union of the top pool_size cliques (ties broken
// lexicographically on the sorted triple). With with_fallback, the
// representative is the smallest id in the first selected clique and the
// reserve set is empty. When fewer than pool_size triangles exist, all of
// them are returned and `truncated` is set.
TargetPool enumerate_clique_pool(const BaseTopology& base, int pool_size,
                                 bool with_fallback = false);

enum class ConstraintMode { kHard, kFallback };

// A kernel from a constrained selector, along with the per-row feasibility
// estimate (how often the local top-k set met the pool) and the fallback
// activation rate, both recorded from the same draws.
struct ConstrainedKernel {
  AmcKernel kernel;
  Eigen::VectorXd feasibility;     // xi
  Eigen::VectorXd fallback_rate;
  ConstraintMode mode = ConstraintMode::kHard;
  std::vector<int> stabilized_rows;
};

// Row-wise Monte Carlo with the pool-constrained selector: on each valid
// draw take the highest-ranked member of topk(anchor) that lies in the
// pool; an empty intersection absorbs (kHard) or routes to the fallback
// representative (kFallback). Identical seeds produce identical draws in
// both modes, so feasibility estimates match exactly across modes.
ConstrainedKernel build_constrained_kernel(const RealizationModel& model,
                                           const BaseTopology& base,
                                           const TargetPool& pool, int k,
                                           ConstraintMode mode,
                                           const EstimateOptions& options);

// The constrained one-step rule as a StepSelector, for exact enumeration.
StepSelector constrained_selector(const TargetPool& pool, int k, int k_min,
                                  ConstraintMode mode);

struct PoolStatistics {
  Eigen::VectorXd feasibility;  // xi per row
  double pool_mass = 0.0;       // AFC mass on the pool
  // Full-length vectors; entries off the respective support are zero.
  Eigen::VectorXd within_pool;  // b restricted to the pool, renormalized
  Eigen::VectorXd censored;     // b off the fallback reserve, renormalized
  double censoring_mass = 1.0;  // c_fb
  double mean_fallback_rate = 0.0;
};

// Occupancy summaries of a constrained kernel: feasibility, pool mass,
// the within-pool profile (empty when the pool mass vanishes) and the
// fallback-censored profile.
PoolStatistics pool_statistics(const ConstrainedKernel& constrained,
                               const Eigen::VectorXd& s,
                               const TargetPool& pool);

}  // namespace afc
