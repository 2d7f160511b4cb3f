#pragma once

// Trajectory-level oracle: runs the actual one-step simulator chain (draw a
// realization, evaluate an optional per-draw reward, report the selected
// next state) without touching the fundamental-matrix pipeline.

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "afc/estimator.hpp"
#include "afc/realization.hpp"

namespace testsupport {

struct StepDraw {
  afc::NodeId anchor = afc::kNoNode;
  bool stopped = false;                      // stop coin fired
  const afc::WorkingGraph* graph = nullptr;  // null when stopped
  afc::NodeId next = afc::kNoNode;           // kNoNode when absorbed
};

using StepRewardFn = std::function<double(const StepDraw&)>;

struct ChainSample {
  std::vector<std::vector<int>> visits;  // [trajectory][node]
  std::vector<double> lengths;           // pre-absorption steps
  std::vector<double> rewards;           // accumulated per trajectory
};

// Runs n_traj absorbed trajectories of the simulator chain under the given
// next-state rule. Trajectory t consumes substream (t, 0) of the seed.
ChainSample run_selector_chain(const afc::RealizationModel& model,
                               const afc::BaseTopology& base,
                               const afc::StepSelector& select,
                               const Eigen::VectorXd& s, int n_traj,
                               std::uint64_t seed,
                               const StepRewardFn& reward = nullptr);

}  // namespace testsupport
