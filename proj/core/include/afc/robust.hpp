#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "afc/afc.hpp"
#include "afc/kernel.hpp"
#include "afc/metrics.hpp"
#include "afc/rng.hpp"

namespace afc {

// Row-wise perturbation region around a nominal kernel: per-entry interval
// radii on the transient block together with per-row leak lower bounds.
// Every admissible kernel keeps r_i >= leak_floor_i, so the fundamental
// matrix exists uniformly over the set (||N||_inf <= 1 / min floor).
class UncertaintySet {
 public:
  // Entrywise interval radii: q_ij in [(Q0_ij - radii_ij)+, min(Q0_ij + radii_ij, 1)].
  static UncertaintySet additive(AmcKernel nominal, Eigen::MatrixXd radii,
                                 Eigen::VectorXd leak_floor);
  // Multiplicative sampling radius: q_ij = Q0_ij * U[1 - delta, 1 + delta],
  // clipped to [0,1]. The materialized radii are delta * Q0.
  static UncertaintySet relative(AmcKernel nominal, double delta_rel,
                                 double leak_floor);

  const AmcKernel& nominal() const { return nominal_; }
  const Eigen::MatrixXd& radii() const { return radii_; }
  const Eigen::VectorXd& leak_floor() const { return leak_floor_; }
  bool multiplicative() const { return multiplicative_; }
  double delta_rel() const { return delta_rel_; }

  // max_i sum_j radii_ij (the epsilon-bar of the visit-gap bound).
  double max_row_radius() const;
  double min_leak_floor() const { return leak_floor_.minCoeff(); }

 private:
  UncertaintySet(AmcKernel nominal, Eigen::MatrixXd radii,
                 Eigen::VectorXd leak_floor, bool multiplicative,
                 double delta_rel);

  AmcKernel nominal_;
  Eigen::MatrixXd radii_;
  Eigen::VectorXd leak_floor_;
  bool multiplicative_;
  double delta_rel_;
};

// Uniform draw from the per-entry intervals; a row whose transient sum
// exceeds 1 - leak_floor_i is rescaled proportionally, and the leak takes
// the remainder.
AmcKernel sample_admissible(const UncertaintySet& uset, Substream& rng);

enum class Discrepancy { kKl, kW1 };

struct AdversarialResult {
  AmcKernel worst_kernel;
  AfcProfile worst_profile;
  double discrepancy = 0.0;
  int sample_index = -1;
};

// Sampling-based adversary: draws n_samples admissible kernels and keeps
// the one whose AFC is farthest from the nominal AFC under the chosen
// discrepancy (ties broken by sample index). W1 needs a ground metric.
AdversarialResult adversarial_search(const UncertaintySet& uset,
                                     const Eigen::VectorXd& s,
                                     Discrepancy discrepancy, int n_samples,
                                     std::uint64_t seed,
                                     const GroundMetric* ground = nullptr);

enum class GapCertificate { kRobustFirst, kRobustSecond, kInconclusive };

struct VisitGapResult {
  double gap = 0.0;    // mu_u - mu_v under the nominal kernel
  double bound = 0.0;  // 2 eps_bar / min_floor^2
  GapCertificate certificate = GapCertificate::kInconclusive;
};

// Ranking certificate for the pair (u, v): the nominal visit gap against
// the worst-case drift bound over the uncertainty set.
VisitGapResult visit_gap(const UncertaintySet& uset, const Eigen::VectorXd& s,
                         NodeId u, NodeId v);
// Point-kernel convenience (zero radii, bound 0).
VisitGapResult visit_gap(const AmcKernel& kernel, const Eigen::VectorXd& s,
                         NodeId u, NodeId v);

struct SensitivityResult {
  Eigen::VectorXd delta_approx;  // first-order resolvent expansion
  Eigen::VectorXd delta_exact;   // afc(Q0 + E) - afc(Q0)
};

// First-order AFC sensitivity to a transient perturbation E. The
// approximation error is O(||E||^2). Throws when Q0 + E leaves the
// admissible region or the expansion premise ||N0 E||_inf >= 1 fails.
SensitivityResult first_order_sensitivity(const AmcKernel& nominal,
                                          const Eigen::MatrixXd& perturbation,
                                          const Eigen::VectorXd& s);

enum class ProxyMetric { kTotalVariation, kW1 };

struct ProxyDeviationResult {
  Eigen::VectorXd b_mix_proxy;
  double deviation = 0.0;
  double bound = 0.0;  // survival-weighted discrepancy sum
};

// How far AFC sits from the two-point mixture built with a reference
// post-initial law p_bar, together with the survival-weighted bound
// sum_{t>=1} w_t metric(pi_t, p_bar) that dominates it.
ProxyDeviationResult mixture_proxy_deviation(const AmcKernel& kernel,
                                             const Eigen::VectorXd& s,
                                             const Eigen::VectorXd& p_bar,
                                             ProxyMetric metric,
                                             const GroundMetric* ground =
                                                 nullptr);

}  // namespace afc
