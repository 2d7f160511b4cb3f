#include <doctest.h>

#include <cmath>

#include "afc/errors.hpp"
#include "afc/fixtures.hpp"
#include "afc/metrics.hpp"
#include "support/random_models.hpp"

using namespace afc;
using testsupport::random_distribution;

namespace {

GroundMetric line_metric(int n) {
  Eigen::MatrixXd d(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      d(i, j) = std::abs(i - j);
    }
  }
  return GroundMetric(std::move(d));
}

}  // namespace

TEST_CASE("KL basics") {
  Eigen::VectorXd p(3), q(3);
  p << 0.2, 0.3, 0.5;
  q << 0.2, 0.3, 0.5;
  CHECK(kl_divergence(p, q) == doctest::Approx(0.0).epsilon(1e-9));
  q << 0.5, 0.3, 0.2;
  CHECK(kl_divergence(p, q) > 0.0);
  // Zero cells are handled by smoothing.
  p << 1.0, 0.0, 0.0;
  CHECK(std::isfinite(kl_divergence(p, q)));
  CHECK(std::isfinite(kl_divergence(q, p)));
}

TEST_CASE("total variation lives in [0,1]") {
  Substream rng(5, 0, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd p = random_distribution(6, rng);
    const Eigen::VectorXd q = random_distribution(6, rng);
    const double tv = total_variation(p, q);
    CHECK(tv >= 0.0);
    CHECK(tv <= 1.0);
  }
  Eigen::VectorXd a(2), b(2);
  a << 1.0, 0.0;
  b << 0.0, 1.0;
  CHECK(total_variation(a, b) == doctest::Approx(1.0));
}

TEST_CASE("ground metric construction validates the axioms") {
  Eigen::MatrixXd bad(2, 2);
  bad << 0.0, 1.0, 2.0, 0.0;  // not symmetric
  CHECK_THROWS_AS(GroundMetric(bad), ConfigError);

  Eigen::MatrixXd diag(2, 2);
  diag << 0.5, 1.0, 1.0, 0.0;  // nonzero diagonal
  CHECK_THROWS_AS(GroundMetric(diag), ConfigError);

  Eigen::MatrixXd tri(3, 3);
  tri << 0, 1, 5, 1, 0, 1, 5, 1, 0;  // d(0,2) > d(0,1) + d(1,2)
  CHECK_THROWS_AS(GroundMetric(tri), ConfigError);
}

TEST_CASE("shortest-path ground metric on the two-clique fixture") {
  const GroundMetric metric = shortest_path_ground_metric(two_clique_bridge());
  CHECK(metric(0, 4) == doctest::Approx(1.0));   // label 1 to label 5
  CHECK(metric(0, 5) == doctest::Approx(2.0));   // across the bridge
  CHECK(metric(1, 6) == doctest::Approx(4.0));   // clique to clique interior
  CHECK(metric(3, 3) == 0.0);
}

TEST_CASE("disconnected bases get a finite surrogate distance") {
  const BaseTopology base(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  const GroundMetric metric = shortest_path_ground_metric(base);
  CHECK(metric(0, 2) == doctest::Approx(2.0));  // max finite (1) + 1
  CHECK(metric(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("unit mass transport costs the ground distance") {
  const GroundMetric metric = line_metric(4);
  Eigen::VectorXd p = Eigen::VectorXd::Zero(4);
  Eigen::VectorXd q = Eigen::VectorXd::Zero(4);
  p(0) = 1.0;
  q(3) = 1.0;
  CHECK(wasserstein1(p, q, metric) == doctest::Approx(3.0));
}

TEST_CASE("two-point transport with distance three") {
  Eigen::MatrixXd d(2, 2);
  d << 0.0, 3.0, 3.0, 0.0;
  const GroundMetric metric(std::move(d));
  Eigen::VectorXd p(2), q(2);
  p << 1.0, 0.0;
  q << 0.0, 1.0;
  CHECK(wasserstein1(p, q, metric) == doctest::Approx(3.0));
}

TEST_CASE("W1 on a line matches the CDF formula") {
  // On a path metric, W1 equals the L1 distance between CDFs.
  const GroundMetric metric = line_metric(5);
  Substream rng(8, 0, 0);
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::VectorXd p = random_distribution(5, rng);
    const Eigen::VectorXd q = random_distribution(5, rng);
    double expected = 0.0, cp = 0.0, cq = 0.0;
    for (int i = 0; i < 4; ++i) {
      cp += p(i);
      cq += q(i);
      expected += std::abs(cp - cq);
    }
    CHECK(wasserstein1(p, q, metric) ==
          doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("W1 satisfies the metric axioms on random triples") {
  const GroundMetric metric = shortest_path_ground_metric(two_clique_bridge());
  Substream rng(11, 0, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd x = random_distribution(9, rng);
    const Eigen::VectorXd y = random_distribution(9, rng);
    const Eigen::VectorXd z = random_distribution(9, rng);
    const double xy = wasserstein1(x, y, metric);
    const double yx = wasserstein1(y, x, metric);
    const double xz = wasserstein1(x, z, metric);
    const double zy = wasserstein1(z, y, metric);
    CHECK(wasserstein1(x, x, metric) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(xy == doctest::Approx(yx).epsilon(1e-9));
    CHECK(xy <= xz + zy + 1e-9);
    CHECK(xy >= 0.0);
  }
}

TEST_CASE("W1 is bounded by diameter times total variation") {
  const GroundMetric metric = shortest_path_ground_metric(two_clique_bridge());
  double diameter = 0.0;
  for (int i = 0; i < metric.size(); ++i) {
    for (int j = 0; j < metric.size(); ++j) {
      diameter = std::max(diameter, metric(i, j));
    }
  }
  Substream rng(14, 0, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd p = random_distribution(9, rng);
    const Eigen::VectorXd q = random_distribution(9, rng);
    CHECK(wasserstein1(p, q, metric) <=
          diameter * total_variation(p, q) + 1e-9);
  }
}
