#include "afc/realization.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "afc/errors.hpp"

namespace afc {

void RealizationModel::validate(const BaseTopology& base) const {
  if (p_on < 0.0 || p_on > 1.0) {
    throw ConfigError("p_on must lie in [0,1]");
  }
  if (alpha < 0.0 || alpha > 1.0) {
    throw ConfigError("alpha must lie in [0,1]");
  }
  if (k_min < 1) {
    throw ConfigError("k_min must be at least 1");
  }
  if (r_hop && *r_hop < 0) {
    throw ConfigError("r_hop must be nonnegative");
  }
  if (mode != RealizationMode::kEdgeBernoulli) {
    if (rho_mu < 0.0 || rho_sigma < 0.0) {
      throw ConfigError("rho_mu and rho_sigma must be nonnegative");
    }
    double max_base = 0.0;
    for (const Edge& e : base.edges()) {
      max_base = std::max(max_base, e.weight);
    }
    if (w_max < max_base) {
      throw ConfigError("w_max must be at least the largest base weight");
    }
  }
}

namespace {

double resample_weight(double w0, double w_max, double rho_mu,
                       double rho_sigma, Substream& rng) {
  const double span = w_max - w0;
  const double mu = w0 + rho_mu * span;
  const double sigma = rho_sigma * span;
  const double x = std::round(rng.next_normal(mu, sigma));
  return std::clamp(x, w0, w_max);
}

}  // namespace

Realization realize(const RealizationModel& model, const BaseTopology& base,
                    NodeId anchor, Substream& rng) {
  if (anchor < 0 || anchor >= base.node_count()) {
    throw ConfigError("anchor out of range: " + std::to_string(anchor));
  }

  // Stop coin first; an absorbed step never materializes a graph.
  if (model.alpha > 0.0 && rng.next_bernoulli(model.alpha)) {
    return {true, std::nullopt};
  }

  std::vector<char> in_scope;
  if (model.r_hop) {
    in_scope.assign(base.node_count(), 0);
    for (NodeId v : base.hop_ball(anchor, *model.r_hop)) {
      in_scope[v] = 1;
    }
  }
  auto scoped = [&](const Edge& e) {
    return in_scope.empty() || (in_scope[e.u] && in_scope[e.v]);
  };

  std::vector<Edge> active;
  active.reserve(base.edges().size());
  switch (model.mode) {
    case RealizationMode::kEdgeBernoulli:
      for (const Edge& e : base.edges()) {
        if (rng.next_bernoulli(model.p_on) && scoped(e)) {
          active.push_back(e);
        }
      }
      break;
    case RealizationMode::kWeightResample:
      for (const Edge& e : base.edges()) {
        if (scoped(e)) {
          active.push_back({e.u, e.v,
                            resample_weight(e.weight, model.w_max,
                                            model.rho_mu, model.rho_sigma,
                                            rng)});
        }
      }
      break;
    case RealizationMode::kComposite:
      for (const Edge& e : base.edges()) {
        if (rng.next_bernoulli(model.p_on) && scoped(e)) {
          active.push_back({e.u, e.v,
                            resample_weight(e.weight, model.w_max,
                                            model.rho_mu, model.rho_sigma,
                                            rng)});
        }
      }
      break;
  }
  return {false, WorkingGraph(base.node_count(), std::move(active))};
}

}  // namespace afc
