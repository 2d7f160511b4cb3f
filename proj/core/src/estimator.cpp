#include "afc/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

#include "afc/betweenness.hpp"
#include "afc/errors.hpp"

namespace afc {

NodeId sample_next(NodeId anchor, const RealizationModel& model,
                   const BaseTopology& base, Substream& rng) {
  const Realization draw = realize(model, base, anchor, rng);
  if (draw.stopped) {
    return kNoNode;
  }
  return local_center(anchor, *draw.graph, model.k_min);
}

namespace {

int resolve_threads(int requested) {
  if (requested > 0) {
    return requested;
  }
  if (const char* env = std::getenv("AFC_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) {
      return parsed;
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

EstimationResult estimate_kernel(const RealizationModel& model,
                                 const BaseTopology& base,
                                 const EstimateOptions& options) {
  if (options.samples_per_row < 1) {
    throw ConfigError("samples_per_row must be at least 1");
  }
  model.validate(base);

  const int n = base.node_count();
  const int m = options.samples_per_row;
  AmcKernel kernel{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n)};

  auto estimate_row = [&](int i) {
    std::vector<long long> counts(n + 1, 0);
    for (int rep = 0; rep < m; ++rep) {
      Substream rng(options.master_seed, static_cast<std::uint64_t>(i),
                    static_cast<std::uint64_t>(rep));
      const NodeId next = sample_next(i, model, base, rng);
      ++counts[next == kNoNode ? n : next];
    }
    for (int j = 0; j < n; ++j) {
      kernel.transient(i, j) = static_cast<double>(counts[j]) / m;
    }
    kernel.leak(i) = static_cast<double>(counts[n]) / m;
  };

  const int threads = std::min(resolve_threads(options.threads), n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) {
      estimate_row(i);
    }
  } else {
    std::atomic<int> next_row{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          const int i = next_row.fetch_add(1);
          if (i >= n) {
            return;
          }
          estimate_row(i);
        }
      });
    }
    for (auto& worker : pool) {
      worker.join();
    }
  }

  EstimationResult result{std::move(kernel), {}};
  if (options.stabilize) {
    const double floor = options.stabilize_floor;
    for (int i = 0; i < n; ++i) {
      if (result.kernel.leak(i) == 0.0) {
        result.kernel.transient.row(i) *= (1.0 - floor);
        result.kernel.leak(i) = floor;
        result.stabilized_rows.push_back(i);
      }
    }
  }
  result.kernel.validate();
  return result;
}

StepSelector local_center_selector(int k_min) {
  return [k_min](NodeId anchor, const WorkingGraph& graph) {
    return local_center(anchor, graph, k_min);
  };
}

AmcKernel exact_kernel_with_selector(const BaseTopology& base, double p_on,
                                     double alpha, const StepSelector& select,
                                     int max_edges) {
  const int n = base.node_count();
  const int m = static_cast<int>(base.edges().size());
  if (m > max_edges) {
    throw ConfigError("edge count " + std::to_string(m) +
                      " exceeds the enumeration cap of " +
                      std::to_string(max_edges));
  }

  AmcKernel kernel{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n)};
  const double survive = 1.0 - alpha;
  std::vector<Edge> active;
  active.reserve(m);
  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
    double weight = 1.0;
    active.clear();
    for (int e = 0; e < m; ++e) {
      if (mask & (1ULL << e)) {
        weight *= p_on;
        active.push_back(base.edges()[e]);
      } else {
        weight *= 1.0 - p_on;
      }
    }
    if (weight == 0.0) {
      continue;
    }
    const WorkingGraph graph(n, active);
    for (NodeId i = 0; i < n; ++i) {
      const NodeId next = select(i, graph);
      if (next != kNoNode) {
        kernel.transient(i, next) += survive * weight;
      }
    }
  }
  kernel.leak = Eigen::VectorXd::Ones(n) - kernel.transient.rowwise().sum();
  kernel.validate(1e-9);
  return kernel;
}

AmcKernel exact_kernel(const RealizationModel& model, const BaseTopology& base,
                       int max_edges) {
  if (model.mode != RealizationMode::kEdgeBernoulli) {
    throw ConfigError("exact enumeration supports the Bernoulli edge model");
  }
  if (model.r_hop) {
    throw ConfigError("exact enumeration does not support r-hop restriction");
  }
  return exact_kernel_with_selector(base, model.p_on, model.alpha,
                                    local_center_selector(model.k_min),
                                    max_edges);
}

}  // namespace afc
