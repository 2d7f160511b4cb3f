#pragma once

#include <cstdint>
#include <iosfwd>

#include <Eigen/Dense>

namespace afc {

// Absorbing Markov chain kernel on V plus one absorbing state: transient
// block Q (n x n) and leak vector r with Q*1 + r = 1 row-wise.
struct AmcKernel {
  Eigen::MatrixXd transient;  // Q
  Eigen::VectorXd leak;       // r

  int size() const { return static_cast<int>(leak.size()); }
  double min_leak() const { return leak.minCoeff(); }

  // Throws NumericalError when entries leave [0,1] or a row sum deviates
  // from 1 by more than tol.
  void validate(double tol = 1e-12) const;

  // FNV-1a over the raw matrix bytes; stable across runs on one platform.
  std::uint64_t content_hash() const;
};

// Dense CSV, one row per transient state: n transient target columns
// followed by the absorbing column.
void write_kernel_csv(const AmcKernel& kernel, std::ostream& out);
AmcKernel read_kernel_csv(std::istream& in);

}  // namespace afc
