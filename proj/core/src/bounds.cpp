#include "afc/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "afc/errors.hpp"

namespace afc {

namespace {

void check_probability(double value, const char* name) {
  if (!(value > 0.0) || value > 1.0) {
    throw ConfigError(std::string(name) + " must lie in (0,1]");
  }
}

}  // namespace

double sample_size_oneshot(double eps, double delta, int n) {
  check_probability(eps, "eps");
  check_probability(delta, "delta");
  if (n < 1) {
    throw ConfigError("n must be at least 1");
  }
  return std::ceil(std::log(2.0 * n / delta) / (2.0 * eps * eps));
}

KernelPlan sample_size_kernel_for_afc(double eps_b, double delta, int n,
                                      double r_min) {
  if (!(eps_b > 0.0)) {
    throw ConfigError("eps_b must be positive");
  }
  check_probability(delta, "delta");
  check_probability(r_min, "r_min");
  if (n < 1) {
    throw ConfigError("n must be at least 1");
  }
  KernelPlan plan;
  plan.eps_q = std::min({r_min / 2.0, r_min * r_min / (8.0 * n),
                         eps_b * r_min * r_min / (8.0 * n)});
  const double pairs = 2.0 * n * (n + 1.0);
  plan.samples_per_row = std::ceil(static_cast<double>(n) * n *
                                   std::log(pairs / delta) /
                                   (2.0 * plan.eps_q * plan.eps_q));
  return plan;
}

double afc_l1_error_bound(double q_error, int n, double r_min) {
  check_probability(r_min, "r_min");
  if (q_error < 0.0) {
    throw ConfigError("q_error must be nonnegative");
  }
  return 8.0 * n * q_error / (r_min * r_min);
}

double fundamental_error_bound(double q_error, double r_min) {
  check_probability(r_min, "r_min");
  if (q_error < 0.0) {
    throw ConfigError("q_error must be nonnegative");
  }
  if (q_error > r_min / 2.0) {
    throw ConfigError("bound requires q_error <= r_min / 2");
  }
  return 2.0 * q_error / (r_min * r_min);
}

}  // namespace afc
