#pragma once

#include <Eigen/Dense>

#include "afc/graph.hpp"

namespace afc {

// KL(p || q) with pseudocount smoothing on both arguments followed by
// renormalization, so zero cells are well-defined.
double kl_divergence(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                     double pseudocount = 1e-12);

// Total variation distance, 0.5 * ||p - q||_1.
double total_variation(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

// Finite metric on the node set. Construction validates symmetry, zero
// diagonal, nonnegativity and (for moderate sizes) the triangle inequality.
class GroundMetric {
 public:
  explicit GroundMetric(Eigen::MatrixXd distances);

  int size() const { return static_cast<int>(distances_.rows()); }
  double operator()(int i, int j) const { return distances_(i, j); }
  const Eigen::MatrixXd& matrix() const { return distances_; }

 private:
  Eigen::MatrixXd distances_;
};

// Weighted shortest-path distances on the base topology. Disconnected
// pairs are mapped to (largest finite distance + 1), which preserves the
// metric axioms while keeping every entry finite.
GroundMetric shortest_path_ground_metric(const BaseTopology& base);

// Exact 1-Wasserstein distance between two distributions on the metric's
// point set, solved as a transportation problem (successive shortest
// paths); no entropic approximation.
double wasserstein1(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                    const GroundMetric& metric);

}  // namespace afc
