#pragma once

namespace afc {

// Hoeffding-based planning helpers. The returned sample counts are exact
// ceilings when they fit a double; they can be astronomically large for
// tight targets, which is reported as-is.

// Per-realization sample count M such that the empirical one-shot center
// law satisfies ||p_hat - p||_inf < eps with probability >= 1 - delta:
// M = ceil( ln(2n/delta) / (2 eps^2) ).
double sample_size_oneshot(double eps, double delta, int n);

struct KernelPlan {
  double eps_q = 0.0;           // target on ||Q_hat - Q||_inf
  double samples_per_row = 0.0; // M
};

// Per-row sample count so that the estimated kernel yields
// ||b_hat - b||_1 <= eps_b with probability >= 1 - delta, given a uniform
// leak lower bound r_min:
//   eps_Q = min{ r/2, r^2/(8n), eps_b r^2/(8n) },
//   M     = ceil( n^2 ln(2n(n+1)/delta) / (2 eps_Q^2) ).
KernelPlan sample_size_kernel_for_afc(double eps_b, double delta, int n,
                                      double r_min);

// Propagated AFC error: ||b_hat - b||_1 <= (8n / r^2) ||Q_hat - Q||_inf.
double afc_l1_error_bound(double q_error, int n, double r_min);

// Fundamental-matrix drift: ||N_hat - N||_inf <= (2 / r^2) ||Q_hat - Q||_inf,
// valid when q_error <= r/2 (throws otherwise).
double fundamental_error_bound(double q_error, double r_min);

}  // namespace afc
