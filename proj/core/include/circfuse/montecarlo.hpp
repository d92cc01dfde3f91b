#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "circfuse/angle.hpp"
#include "circfuse/distributions.hpp"

namespace circfuse {

/// A point estimate with its delta-method standard error.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

// Population estimators over a sample of angles. Standard errors come from
// the sample covariance of (cos, sin) pushed through the estimator's gradient.
Estimate estimate_wn_variance(std::span<const Angle> samples);
Estimate estimate_vm_kappa(std::span<const Angle> samples);
Estimate estimate_vm_inverse_kappa(std::span<const Angle> samples);
Estimate estimate_circ_variance(std::span<const Angle> samples);
Estimate estimate_ss_variance(std::span<const Angle> samples);

enum class RowStatus { kOk, kFailed };

/// One sweep row: grid value, closed-form prediction and the Monte Carlo
/// estimate with its standard error.
struct ExperimentResult {
  double grid_value = 0.0;
  double predicted = std::numeric_limits<double>::quiet_NaN();
  double mc_estimate = std::numeric_limits<double>::quiet_NaN();
  double mc_std_error = std::numeric_limits<double>::quiet_NaN();
  RowStatus status = RowStatus::kOk;
  std::string message;
  /// Stienne rows only: min(V_1, V_2) of the two inputs.
  double reference = std::numeric_limits<double>::quiet_NaN();

  /// |mc - predicted| <= k * SE.
  [[nodiscard]] bool within(double k_std_errors) const;
};

/// Two-sensor sweep setup.
///
/// `fixed_dispersion` is sensor 1's native parameter (sigma^2 for WN, kappa
/// for VM). `grid` holds sensor 2's dispersion on the variance-like scale:
/// sigma^2 for WN and 1/kappa for VM.
struct SweepConfig {
  Family family = Family::kWrappedNormal;
  double fixed_dispersion = 0.3;
  std::vector<double> grid;
  std::size_t trials = 100000;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class VarianceEstimator {
  kSecondMoment,     // wn_variance for WN, vm_concentration for VM
  kStupavskySymons,  // ss_variance, predicted as sigma^2 (WN) or 1/kappa (VM)
};

enum class FusionRule { kWeighted, kMean };

struct RunOptions {
  unsigned threads = 0;  // 0: std::thread::hardware_concurrency()
};

/// `points` log-spaced values from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t points);

inline constexpr std::size_t kDefaultTrials = 100000;
inline constexpr std::size_t kDefaultGridPoints = 30;
/// Location parameter shared by every sweep draw.
inline constexpr double kSweepMu = 0.7;

/// Estimator accuracy sweep. `grid` is the family's native parameter
/// (sigma^2 or kappa). predicted = the true parameter in the estimator's units.
std::vector<ExperimentResult> run_variance_experiment(Family family,
                                                      std::span<const double> grid,
                                                      std::size_t trials, std::uint64_t seed,
                                                      VarianceEstimator estimator,
                                                      RunOptions options = {});

/// Fused-dispersion sweep: each trial draws one angle per sensor and fuses
/// them; the fused population's dispersion (sigma^2 or 1/kappa) is compared
/// with the closed-form fused dispersion.
std::vector<ExperimentResult> run_fusion_experiment(const SweepConfig& config,
                                                    FusionRule rule = FusionRule::kWeighted,
                                                    RunOptions options = {});

/// Circular-variance baseline sweep (VM only): predicted = harmonic fusion of
/// the population circular variances, mc = circular variance of the
/// weighted-fused population, reference = min input circular variance.
std::vector<ExperimentResult> run_stienne_experiment(const SweepConfig& config,
                                                     RunOptions options = {});

inline constexpr const char* kCsvHeader = "grid_value,predicted,mc_estimate,mc_std_error,status";

/// Header line plus one row per result, 9 significant digits.
std::string to_csv(std::span<const ExperimentResult> rows);

}  // namespace circfuse
