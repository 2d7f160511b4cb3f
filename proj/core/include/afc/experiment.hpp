#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "afc/constrained.hpp"
#include "afc/graph_io.hpp"
#include "afc/realization.hpp"

namespace afc {

struct GraphSourceSpec {
  enum class Kind { kEr, kWs, kFile } kind = Kind::kEr;
  int n = 100;
  double er_p = 0.08;
  int ws_ring_degree = 6;
  double ws_rewire_p = 0.10;
  std::filesystem::path path;
  GraphFormat format = GraphFormat::kGmlSubset;
  bool weighted = true;
};

struct RobustSpec {
  double delta_rel = 0.50;
  double leak_floor = 0.05;
  int n_samples = 100;
  bool use_kl = true;
  bool use_w1 = true;
  int top_report = 5;
  std::vector<std::pair<NodeId, NodeId>> certificate_pairs;
};

struct RewardSpecConfig {
  int n_hubs = 3;
  std::vector<double> levels = {10.0, 10.0, 10.0};
  double beta = 0.60;
  int topk_k = 3;
};

struct ConstrainedSpecConfig {
  int pool_size = 8;
  int k = 3;
  ConstraintMode mode = ConstraintMode::kFallback;
};

struct ExperimentConfig {
  GraphSourceSpec graph;
  RealizationModel model;
  int samples_per_row = 60;
  std::uint64_t seed = 1;
  bool stabilize = true;
  double stabilize_floor = 1e-6;

  bool run_baseline = true;
  bool run_robust = false;
  bool run_reward = false;
  bool run_constrained = false;

  RobustSpec robust;
  RewardSpecConfig reward;
  ConstrainedSpecConfig constrained;

  // "uniform" or "point:<node>"; uniform when empty.
  std::string initial = "uniform";
  int topk_report = 10;
  bool emit_svg = false;
};

// Key = value configuration with [section] headers and '#' comments.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(std::istream& in,
                              const std::string& name = "<stream>");

// Round-trips a config through the manifest of a previous run.
ExperimentConfig config_from_manifest(const std::filesystem::path& manifest);

// Runs the configured analyses in dependency order: the kernel is
// estimated once and reused by every post-processing step. Writes
// kernel.csv/kernel.json, afc.json, topk.csv, plotdata/, and one JSON
// report per requested analysis, plus manifest.json. On failure, partial
// results stay on disk next to a failure marker.
void run_experiment(const ExperimentConfig& config,
                    const std::filesystem::path& out_dir);

}  // namespace afc
