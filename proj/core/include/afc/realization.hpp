#pragma once

#include <optional>

#include "afc/graph.hpp"
#include "afc/rng.hpp"

namespace afc {

enum class RealizationMode {
  kEdgeBernoulli,    // keep each base edge independently with prob p_on
  kWeightResample,   // keep all edges, redraw integer weights
  kComposite,        // Bernoulli retention plus weight resampling
};

// One-step stochastic recipe turning the base topology into a working
// graph from a given anchor.
struct RealizationModel {
  RealizationMode mode = RealizationMode::kEdgeBernoulli;

  double p_on = 1.0;  // edge retention probability

  // Weight resampling: x_e ~ Normal(mu_e, sigma_e^2) with
  //   mu_e    = w0_e + rho_mu * (w_max - w0_e)
  //   sigma_e = rho_sigma * (w_max - w0_e)
  // rounded and clipped to [w0_e, w_max].
  double rho_mu = 0.0;
  double rho_sigma = 0.0;
  double w_max = 0.0;

  double alpha = 0.0;  // exogenous stop probability per step
  int k_min = 1;       // component-size cutoff below which a step absorbs

  // When set, the working graph is the induced subgraph on the r-hop ball
  // of the anchor in the base topology; all other nodes are isolated.
  std::optional<int> r_hop;

  void validate(const BaseTopology& base) const;
};

// Outcome of one simulator draw. When the exogenous stop coin fires the
// graph is not materialized; the component-size check happens at the
// caller against the anchor.
struct Realization {
  bool stopped = false;
  std::optional<WorkingGraph> graph;
};

Realization realize(const RealizationModel& model, const BaseTopology& base,
                    NodeId anchor, Substream& rng);

}  // namespace afc
