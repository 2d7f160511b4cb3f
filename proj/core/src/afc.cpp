#include "afc/afc.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "afc/errors.hpp"
#include "afc/graph.hpp"
#include "afc/rng.hpp"

namespace afc {

Eigen::VectorXd uniform_initial(int n) {
  return Eigen::VectorXd::Constant(n, 1.0 / n);
}

void check_initial(const Eigen::VectorXd& s, int n, double tol) {
  if (static_cast<int>(s.size()) != n) {
    throw ConfigError("initial distribution has wrong length");
  }
  if (s.minCoeff() < -tol) {
    throw ConfigError("initial distribution has a negative entry");
  }
  if (std::abs(s.sum() - 1.0) > tol) {
    throw ConfigError("initial distribution does not sum to 1");
  }
}

namespace {

// Power-iteration estimate of the spectral radius of Q; only consulted
// when some leak entries vanish and the Neumann-series argument does not
// apply directly.
double spectral_radius_estimate(const Eigen::MatrixXd& q) {
  const int n = static_cast<int>(q.rows());
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / n);
  double lambda = 0.0;
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXd y = q.transpose() * x;
    const double norm = y.norm();
    if (norm == 0.0) {
      return 0.0;
    }
    lambda = norm / x.norm();
    x = y / norm;
  }
  return lambda;
}

void ensure_absorbing(const AmcKernel& kernel) {
  if (kernel.min_leak() > 0.0) {
    return;
  }
  if (spectral_radius_estimate(kernel.transient) < 1.0 - 1e-12) {
    return;
  }
  std::string rows;
  for (int i = 0; i < kernel.size(); ++i) {
    if (kernel.leak(i) <= 1e-15) {
      if (!rows.empty()) {
        rows += ",";
      }
      rows += std::to_string(i);
    }
  }
  throw NumericalError(
      "kernel is not absorbing (spectral radius of Q >= 1); zero-leak rows: " +
      rows);
}

}  // namespace

AfcProfile afc(const AmcKernel& kernel, const Eigen::VectorXd& s) {
  const int n = kernel.size();
  check_initial(s, n);
  ensure_absorbing(kernel);

  const Eigen::MatrixXd system =
      Eigen::MatrixXd::Identity(n, n) - kernel.transient.transpose();
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  Eigen::VectorXd mu = lu.solve(s);

  // Visit counts are nonnegative; clamp solver dust so downstream ratios
  // stay inside the simplex.
  for (int i = 0; i < n; ++i) {
    if (mu(i) < 0.0 && mu(i) > -1e-12) {
      mu(i) = 0.0;
    }
  }
  const double total = mu.sum();
  if (!(total >= 1.0 - 1e-9) || !std::isfinite(total)) {
    throw NumericalError("expected absorption time is not finite or < 1");
  }
  AfcProfile profile;
  profile.mu = mu;
  profile.expected_steps = total;
  profile.b = mu / total;
  return profile;
}

Eigen::VectorXd post_initial_afc(const AmcKernel& kernel,
                                 const Eigen::VectorXd& s) {
  const AfcProfile profile = afc(kernel, s);
  const double denom = profile.expected_steps - 1.0;
  if (denom <= 1e-12) {
    throw NumericalError("no post-initial steps: E[T] <= 1");
  }
  Eigen::VectorXd b_plus = (profile.mu - s) / denom;
  for (int i = 0; i < b_plus.size(); ++i) {
    if (b_plus(i) < 0.0 && b_plus(i) > -1e-14) {
      b_plus(i) = 0.0;
    }
  }
  const double total = b_plus.sum();
  if (total <= 0.0) {
    throw NumericalError("post-initial mass vanished");
  }
  return b_plus / total;
}

SimulatedAfc simulate_afc(const AmcKernel& kernel, const Eigen::VectorXd& s,
                          int n_trajectories, std::uint64_t seed,
                          long long step_cap) {
  const int n = kernel.size();
  check_initial(s, n);
  if (n_trajectories < 1) {
    throw ConfigError("n_trajectories must be at least 1");
  }

  // Row-major cumulative transition table over V then the absorbing state.
  std::vector<std::vector<double>> cumulative(n, std::vector<double>(n + 1));
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      acc += kernel.transient(i, j);
      cumulative[i][j] = acc;
    }
    cumulative[i][n] = 1.0;
  }
  std::vector<double> s_cumulative(n);
  {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      acc += s(i);
      s_cumulative[i] = acc;
    }
    s_cumulative[n - 1] = std::max(s_cumulative[n - 1], 1.0);
  }
  auto pick = [](const std::vector<double>& cum, double u) {
    // First index with cum[idx] > u, so zero-probability cells are skipped.
    return static_cast<int>(
        std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
  };

  // All pre-absorption states, flattened across trajectories. A uniform
  // index into this pool is exactly a length-biased trajectory draw
  // followed by a uniform step.
  std::vector<int> pool;
  pool.reserve(static_cast<std::size_t>(n_trajectories) * 4);
  Eigen::VectorXd visits = Eigen::VectorXd::Zero(n);
  long long total_steps = 0;

  for (int t = 0; t < n_trajectories; ++t) {
    Substream rng(seed, static_cast<std::uint64_t>(t), 0);
    int state = pick(s_cumulative, rng.next_uniform());
    long long length = 0;
    for (;;) {
      visits(state) += 1.0;
      pool.push_back(state);
      ++length;
      if (length > step_cap) {
        throw NumericalError(
            "trajectory exceeded step cap; kernel is nearly non-absorbing");
      }
      const int next = pick(cumulative[state], rng.next_uniform());
      if (next == n) {
        break;
      }
      state = next;
    }
    total_steps += length;
  }

  SimulatedAfc out;
  out.total_steps = total_steps;
  out.profile.mu = visits / n_trajectories;
  out.profile.expected_steps =
      static_cast<double>(total_steps) / n_trajectories;
  out.profile.b = visits / static_cast<double>(total_steps);

  Eigen::VectorXd uniform_step = Eigen::VectorXd::Zero(n);
  Substream step_rng(seed, static_cast<std::uint64_t>(n_trajectories), 1);
  for (int d = 0; d < n_trajectories; ++d) {
    const auto idx = step_rng.next_below(pool.size());
    uniform_step(pool[idx]) += 1.0;
  }
  out.uniform_step = uniform_step / n_trajectories;
  return out;
}

MixtureCheck mixture_check(const AmcKernel& kernel, const Eigen::VectorXd& s) {
  const int n = kernel.size();
  const AfcProfile profile = afc(kernel, s);

  Eigen::VectorXd p_hat = Eigen::VectorXd::Zero(n);
  int contributing = 0;
  for (int i = 0; i < n; ++i) {
    const double survive = 1.0 - kernel.leak(i);
    if (survive > 1e-15) {
      p_hat += kernel.transient.row(i).transpose() / survive;
      ++contributing;
    }
  }

  MixtureCheck check;
  if (contributing == 0) {
    // Immediate absorption from every state: the mixture is just s.
    check.b_mixture = s;
    check.max_row_divergence = 0.0;
    return check;
  }
  p_hat /= contributing;

  double divergence = 0.0;
  for (int i = 0; i < n; ++i) {
    const double survive = 1.0 - kernel.leak(i);
    if (survive > 1e-15) {
      const Eigen::VectorXd row =
          kernel.transient.row(i).transpose() / survive;
      divergence = std::max(divergence, (row - p_hat).lpNorm<1>());
    }
  }

  const double w0 = 1.0 / profile.expected_steps;
  check.b_mixture = w0 * s + (1.0 - w0) * p_hat;
  check.max_row_divergence = divergence;
  return check;
}

}  // namespace afc
