#pragma once

// Small helpers for building random kernels and distributions in tests.

#include <Eigen/Dense>

#include "afc/kernel.hpp"
#include "afc/rng.hpp"

namespace testsupport {

inline Eigen::VectorXd random_distribution(int n, afc::Substream& rng) {
  Eigen::VectorXd v(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    v(i) = 0.05 + rng.next_uniform();
    total += v(i);
  }
  return v / total;
}

// Random absorbing kernel whose leaks land in [min_leak, min_leak + spread].
inline afc::AmcKernel random_kernel(int n, double min_leak, double spread,
                                    afc::Substream& rng) {
  afc::AmcKernel kernel{Eigen::MatrixXd::Zero(n, n),
                        Eigen::VectorXd::Zero(n)};
  for (int i = 0; i < n; ++i) {
    const double leak = min_leak + spread * rng.next_uniform();
    const Eigen::VectorXd row = random_distribution(n, rng);
    kernel.transient.row(i) = (1.0 - leak) * row.transpose();
    kernel.leak(i) = 1.0 - kernel.transient.row(i).sum();
  }
  kernel.validate(1e-9);
  return kernel;
}

// Constant-leak kernel with every conditional continuation row equal to p.
inline afc::AmcKernel canonical_kernel(double alpha,
                                       const Eigen::VectorXd& p) {
  const int n = static_cast<int>(p.size());
  afc::AmcKernel kernel{Eigen::MatrixXd::Zero(n, n),
                        Eigen::VectorXd::Constant(n, alpha)};
  for (int i = 0; i < n; ++i) {
    kernel.transient.row(i) = (1.0 - alpha) * p.transpose();
    kernel.leak(i) = 1.0 - kernel.transient.row(i).sum();
  }
  return kernel;
}

}  // namespace testsupport
