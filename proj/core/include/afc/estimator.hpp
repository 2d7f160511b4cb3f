#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "afc/kernel.hpp"
#include "afc/realization.hpp"

namespace afc {

// One step of the compressed chain from `anchor`: the exogenous stop coin
// and the component-size cutoff both map to kNoNode (absorption); every
// other draw reports the tie-broken local center of the realized graph.
NodeId sample_next(NodeId anchor, const RealizationModel& model,
                   const BaseTopology& base, Substream& rng);

struct EstimateOptions {
  int samples_per_row = 60;
  std::uint64_t master_seed = 0;
  bool stabilize = true;
  // When a sampled row has zero absorption mass, the leak is set to this
  // floor and the transient entries are rescaled by (1 - floor).
  double stabilize_floor = 1e-6;
  // 0 = use AFC_THREADS env var, falling back to hardware concurrency.
  int threads = 0;
};

struct EstimationResult {
  AmcKernel kernel;
  std::vector<int> stabilized_rows;
};

// Row-wise Monte Carlo kernel estimate. Row i, replicate m consumes the
// (i, m) substream of the master seed, so results are byte-identical for
// any thread count and any row order.
EstimationResult estimate_kernel(const RealizationModel& model,
                                 const BaseTopology& base,
                                 const EstimateOptions& options);

// Next-state rule applied to a materialized (non-stopped) realization;
// returns kNoNode for absorption.
using StepSelector = std::function<NodeId(NodeId anchor, const WorkingGraph&)>;

StepSelector local_center_selector(int k_min);

// Exact kernel for the Bernoulli edge model by enumerating all 2^|E| edge
// subsets; the stop coin enters as an independent (1 - alpha) factor.
// Requires |E| <= max_edges.
AmcKernel exact_kernel(const RealizationModel& model, const BaseTopology& base,
                       int max_edges = 20);

// Enumeration with a custom next-state rule (shared by the constrained
// selectors and by oracle-style checks).
AmcKernel exact_kernel_with_selector(const BaseTopology& base, double p_on,
                                     double alpha, const StepSelector& select,
                                     int max_edges = 20);

}  // namespace afc
