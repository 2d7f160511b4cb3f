#pragma once

#include <vector>

namespace testsupport {

struct MeanVar {
  double mean = 0.0;
  double variance = 0.0;  // sample variance
};

MeanVar mean_var(const std::vector<double>& xs);

// Ratio estimator R = sum(x) / sum(y) with a delta-method standard error
// from per-observation pairs.
struct RatioEstimate {
  double ratio = 0.0;
  double se = 0.0;
};
RatioEstimate ratio_estimate(const std::vector<double>& x,
                             const std::vector<double>& y);

// Two-sample chi-square homogeneity statistic over outcome counts; cells
// with pooled expectation below min_expected are merged into one.
struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
};
ChiSquare chi_square_homogeneity(const std::vector<long long>& a,
                                 const std::vector<long long>& b,
                                 double min_expected = 5.0);

// Wilson-Hilferty approximation of the chi-square quantile.
double chi_square_quantile(int dof, double z_score);

}  // namespace testsupport
