#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "afc/kernel.hpp"

namespace afc {

// Occupancy summary of an absorbing chain: visit counts mu = s (I-Q)^-1,
// their normalization b, and the expected pre-absorption length mu . 1.
struct AfcProfile {
  Eigen::VectorXd b;
  Eigen::VectorXd mu;
  double expected_steps = 0.0;
};

// Uniform distribution on n states.
Eigen::VectorXd uniform_initial(int n);

// Validates that s is a distribution (nonnegative, sums to 1 within tol).
void check_initial(const Eigen::VectorXd& s, int n, double tol = 1e-12);

// Absorbing-frequency profile via a direct linear solve of
// (I - Q^T) x = s; throws NumericalError naming zero-leak rows when the
// system is singular.
AfcProfile afc(const AmcKernel& kernel, const Eigen::VectorXd& s);

// Occupancy law excluding the initial step: (mu - s) / (E[T] - 1).
// Requires E[T] > 1; negative rounding dust below 1e-14 is clipped and the
// vector renormalized.
Eigen::VectorXd post_initial_afc(const AmcKernel& kernel,
                                 const Eigen::VectorXd& s);

struct SimulatedAfc {
  AfcProfile profile;             // visit-count ratio estimator
  Eigen::VectorXd uniform_step;   // law of a length-biased uniform step
  long long total_steps = 0;
};

// Monte Carlo check of the matrix pipeline: runs absorbed trajectories of
// the kernel and reports both the visit-ratio estimate and the empirical
// law of a uniformly chosen pre-absorption step under the length-biased
// path measure. A trajectory exceeding step_cap raises NumericalError.
SimulatedAfc simulate_afc(const AmcKernel& kernel, const Eigen::VectorXd& s,
                          int n_trajectories, std::uint64_t seed,
                          long long step_cap = 1000000);

struct MixtureCheck {
  Eigen::VectorXd b_mixture;   // (1/E[T]) s + (1 - 1/E[T]) p_hat
  double max_row_divergence;   // max_i || Q_i / (1-r_i) - p_hat ||_1
};

// Two-point mixture diagnostic: p_hat is the mean survival-conditional
// row; the divergence measures how far the kernel is from having a single
// post-initial continuation law. Rows with r_i = 1 are excluded.
MixtureCheck mixture_check(const AmcKernel& kernel, const Eigen::VectorXd& s);

}  // namespace afc
