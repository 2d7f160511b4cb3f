#include "afc/robust.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "afc/errors.hpp"

namespace afc {

UncertaintySet::UncertaintySet(AmcKernel nominal, Eigen::MatrixXd radii,
                               Eigen::VectorXd leak_floor, bool multiplicative,
                               double delta_rel)
    : nominal_(std::move(nominal)),
      radii_(std::move(radii)),
      leak_floor_(std::move(leak_floor)),
      multiplicative_(multiplicative),
      delta_rel_(delta_rel) {
  const int n = nominal_.size();
  nominal_.validate(1e-9);
  if (radii_.rows() != n || radii_.cols() != n ||
      static_cast<int>(leak_floor_.size()) != n) {
    throw ConfigError("uncertainty set shape mismatch");
  }
  if (radii_.minCoeff() < 0.0) {
    throw ConfigError("perturbation radii must be nonnegative");
  }
  for (int i = 0; i < n; ++i) {
    if (leak_floor_(i) <= 0.0 || leak_floor_(i) > 1.0) {
      throw ConfigError("leak floor must lie in (0,1] at row " +
                        std::to_string(i));
    }
    double lower_sum = 0.0;
    for (int j = 0; j < n; ++j) {
      lower_sum += std::max(nominal_.transient(i, j) - radii_(i, j), 0.0);
    }
    if (lower_sum > 1.0 - leak_floor_(i) + 1e-12) {
      throw ConfigError("infeasible uncertainty row " + std::to_string(i) +
                        ": interval lower bounds exceed 1 - leak floor");
    }
  }
}

UncertaintySet UncertaintySet::additive(AmcKernel nominal,
                                        Eigen::MatrixXd radii,
                                        Eigen::VectorXd leak_floor) {
  return UncertaintySet(std::move(nominal), std::move(radii),
                        std::move(leak_floor), false, 0.0);
}

UncertaintySet UncertaintySet::relative(AmcKernel nominal, double delta_rel,
                                        double leak_floor) {
  if (delta_rel < 0.0) {
    throw ConfigError("delta_rel must be nonnegative");
  }
  const int n = nominal.size();
  Eigen::MatrixXd radii = delta_rel * nominal.transient;
  Eigen::VectorXd floors = Eigen::VectorXd::Constant(n, leak_floor);
  return UncertaintySet(std::move(nominal), std::move(radii),
                        std::move(floors), true, delta_rel);
}

double UncertaintySet::max_row_radius() const {
  return radii_.rowwise().sum().maxCoeff();
}

AmcKernel sample_admissible(const UncertaintySet& uset, Substream& rng) {
  const AmcKernel& nominal = uset.nominal();
  const int n = nominal.size();
  AmcKernel sample{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n)};

  for (int i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < n; ++j) {
      const double q0 = nominal.transient(i, j);
      double q;
      if (uset.multiplicative()) {
        const double factor =
            1.0 - uset.delta_rel() + 2.0 * uset.delta_rel() * rng.next_uniform();
        q = std::clamp(q0 * factor, 0.0, 1.0);
      } else {
        const double lo = std::max(q0 - uset.radii()(i, j), 0.0);
        const double hi = std::min(q0 + uset.radii()(i, j), 1.0);
        q = lo + (hi - lo) * rng.next_uniform();
      }
      sample.transient(i, j) = q;
      row_sum += q;
    }
    const double budget = 1.0 - uset.leak_floor()(i);
    if (row_sum > budget) {
      sample.transient.row(i) *= budget / row_sum;
      row_sum = budget;
    }
    sample.leak(i) = 1.0 - sample.transient.row(i).sum();
  }
  sample.validate(1e-9);
  return sample;
}

AdversarialResult adversarial_search(const UncertaintySet& uset,
                                     const Eigen::VectorXd& s,
                                     Discrepancy discrepancy, int n_samples,
                                     std::uint64_t seed,
                                     const GroundMetric* ground) {
  if (n_samples < 1) {
    throw ConfigError("n_samples must be at least 1");
  }
  if (discrepancy == Discrepancy::kW1 && ground == nullptr) {
    throw ConfigError("W1 search needs a ground metric");
  }
  const AfcProfile nominal_profile = afc(uset.nominal(), s);

  std::vector<double> scores(n_samples, 0.0);
  auto evaluate = [&](int k) {
    Substream rng(seed, static_cast<std::uint64_t>(k), 0);
    const AmcKernel sample = sample_admissible(uset, rng);
    const AfcProfile profile = afc(sample, s);
    scores[k] = discrepancy == Discrepancy::kKl
                    ? kl_divergence(profile.b, nominal_profile.b)
                    : wasserstein1(profile.b, nominal_profile.b, *ground);
  };

  const unsigned hw = std::thread::hardware_concurrency();
  const int threads =
      std::min<int>(n_samples, hw == 0 ? 1 : static_cast<int>(hw));
  if (threads <= 1) {
    for (int k = 0; k < n_samples; ++k) {
      evaluate(k);
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          const int k = next.fetch_add(1);
          if (k >= n_samples) {
            return;
          }
          evaluate(k);
        }
      });
    }
    for (auto& worker : pool) {
      worker.join();
    }
  }

  // Index-order scan keeps the argmax deterministic under ties.
  int best = 0;
  for (int k = 1; k < n_samples; ++k) {
    if (scores[k] > scores[best]) {
      best = k;
    }
  }

  AdversarialResult result;
  Substream rng(seed, static_cast<std::uint64_t>(best), 0);
  result.worst_kernel = sample_admissible(uset, rng);
  result.worst_profile = afc(result.worst_kernel, s);
  result.discrepancy = scores[best];
  result.sample_index = best;
  return result;
}

namespace {

VisitGapResult gap_with_bound(const AmcKernel& kernel,
                              const Eigen::VectorXd& s, NodeId u, NodeId v,
                              double bound) {
  if (u == v) {
    throw ConfigError("visit gap needs two distinct nodes");
  }
  const AfcProfile profile = afc(kernel, s);
  VisitGapResult result;
  result.gap = profile.mu(u) - profile.mu(v);
  result.bound = bound;
  if (result.gap > bound) {
    result.certificate = GapCertificate::kRobustFirst;
  } else if (result.gap < -bound) {
    result.certificate = GapCertificate::kRobustSecond;
  } else {
    result.certificate = GapCertificate::kInconclusive;
  }
  return result;
}

}  // namespace

VisitGapResult visit_gap(const UncertaintySet& uset, const Eigen::VectorXd& s,
                         NodeId u, NodeId v) {
  const double floor = uset.min_leak_floor();
  const double bound = 2.0 * uset.max_row_radius() / (floor * floor);
  return gap_with_bound(uset.nominal(), s, u, v, bound);
}

VisitGapResult visit_gap(const AmcKernel& kernel, const Eigen::VectorXd& s,
                         NodeId u, NodeId v) {
  return gap_with_bound(kernel, s, u, v, 0.0);
}

SensitivityResult first_order_sensitivity(const AmcKernel& nominal,
                                          const Eigen::MatrixXd& perturbation,
                                          const Eigen::VectorXd& s) {
  const int n = nominal.size();
  if (perturbation.rows() != n || perturbation.cols() != n) {
    throw ConfigError("perturbation shape mismatch");
  }

  AmcKernel perturbed{nominal.transient + perturbation,
                      Eigen::VectorXd::Zero(n)};
  for (int i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < n; ++j) {
      const double q = perturbed.transient(i, j);
      if (q < -1e-12 || q > 1.0 + 1e-12) {
        throw NumericalError(
            "perturbed kernel leaves the admissible region at row " +
            std::to_string(i));
      }
      row_sum += q;
    }
    if (row_sum > 1.0 + 1e-12) {
      throw NumericalError("perturbed row sums exceed 1 at row " +
                           std::to_string(i));
    }
    perturbed.leak(i) = 1.0 - row_sum;
  }

  const Eigen::MatrixXd system =
      Eigen::MatrixXd::Identity(n, n) - nominal.transient;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);

  // ||N0 E||_inf < 1 is the expansion premise; check it exactly.
  const Eigen::MatrixXd n0e = lu.solve(perturbation);
  if (n0e.cwiseAbs().rowwise().sum().maxCoeff() >= 1.0) {
    throw NumericalError("perturbation too large for a first-order expansion");
  }

  const AfcProfile base = afc(nominal, s);
  // s N0 E N0 as two row solves against (I - Q0^T).
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_t(system.transpose());
  const Eigen::VectorXd y = perturbation.transpose() * base.mu;
  const Eigen::VectorXd z = lu_t.solve(y);

  SensitivityResult result;
  const double total = base.expected_steps;
  result.delta_approx = z / total - base.b * (z.sum() / total);
  result.delta_exact = afc(perturbed, s).b - base.b;
  return result;
}

ProxyDeviationResult mixture_proxy_deviation(const AmcKernel& kernel,
                                             const Eigen::VectorXd& s,
                                             const Eigen::VectorXd& p_bar,
                                             ProxyMetric metric,
                                             const GroundMetric* ground) {
  if (metric == ProxyMetric::kW1 && ground == nullptr) {
    throw ConfigError("W1 deviation needs a ground metric");
  }
  check_initial(p_bar, kernel.size(), 1e-9);
  auto distance = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return metric == ProxyMetric::kTotalVariation
               ? total_variation(a, b)
               : wasserstein1(a, b, *ground);
  };

  const AfcProfile profile = afc(kernel, s);
  const double expected = profile.expected_steps;
  const double w0 = 1.0 / expected;

  ProxyDeviationResult result;
  result.b_mix_proxy = w0 * s + (1.0 - w0) * p_bar;
  result.deviation = distance(profile.b, result.b_mix_proxy);

  // Survival-weighted sum over t >= 1, truncated once the tail mass bound
  // drops below 1e-10 of the expected length.
  const double q_norm = kernel.transient.rowwise().sum().maxCoeff();
  Eigen::RowVectorXd x = s.transpose() * kernel.transient;  // t = 1
  double bound = 0.0;
  for (long long t = 1; t <= 1000000; ++t) {
    const double mass = x.sum();
    if (mass <= 0.0) {
      break;
    }
    const Eigen::VectorXd pi_t = x.transpose() / mass;
    bound += (mass / expected) * distance(pi_t, p_bar);
    const double tail =
        q_norm < 1.0 ? mass * q_norm / (1.0 - q_norm) : mass * 1e12;
    if (tail / expected < 1e-10) {
      break;
    }
    x = x * kernel.transient;
  }
  result.bound = bound;
  return result;
}

}  // namespace afc
