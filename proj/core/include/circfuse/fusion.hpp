#pragma once

#include <span>

#include "circfuse/angle.hpp"

namespace circfuse {

enum class DispersionKind {
  kWnVariance,    // Wrapped-Normal sigma^2 [rad^2], > 0
  kVmKappa,       // von Mises concentration, >= 0
  kCircVariance,  // circular variance V = 1 - R, in (0, 1]
};

const char* to_string(DispersionKind kind);

/// A validated dispersion measure tagged with the family it belongs to.
class DispersionValue {
 public:
  static DispersionValue wn_variance(double sigma_sq);
  static DispersionValue vm_kappa(double kappa);
  static DispersionValue circ_variance(double v);

  [[nodiscard]] DispersionKind kind() const { return kind_; }
  [[nodiscard]] double value() const { return value_; }

  /// Explicit WN <-> VM conversion using sigma^2 = 1/kappa. Converting to the
  /// same kind is the identity. Circular variance does not convert.
  [[nodiscard]] DispersionValue converted_to(DispersionKind target) const;

  /// Concentration-like weight used by the weighted mean: 1/sigma^2 or kappa.
  [[nodiscard]] double weight() const;

  /// sigma^2 for WN, 1/kappa for VM (may be +inf for kappa = 0), V otherwise.
  [[nodiscard]] double as_variance() const;

  friend bool operator==(const DispersionValue&, const DispersionValue&) = default;

 private:
  DispersionValue(DispersionKind kind, double value) : kind_(kind), value_(value) {}

  DispersionKind kind_;
  double value_;
};

/// One sensor's estimate of a circular quantity.
struct AngularEstimate {
  Angle angle;
  DispersionValue dispersion;
};

/// Maximum-likelihood fused mean: direction of sum_i w_i (cos, sin)(theta_i)
/// with w_i = kappa_i or 1/sigma_i^2. All estimates must share one WN or VM
/// kind (ContractError otherwise). Zero-weight estimates are ignored.
Angle fuse_mean_weighted(std::span<const AngularEstimate> estimates);

/// Unweighted circular mean of the estimate angles.
Angle fuse_mean_plain(std::span<const AngularEstimate> estimates);

/// 1/sigma_f^2 = sum 1/sigma_i^2.
double fuse_variance_weighted(std::span<const double> variances);
/// kappa_f = sum kappa_i.
double fuse_kappa_weighted(std::span<const double> kappas);
/// sigma_f^2 = sum sigma_i^2 / n^2, n = number of fused estimates.
double fuse_variance_mean(std::span<const double> variances);
/// 1/kappa_f = sum (1/kappa_i) / n^2.
double fuse_kappa_mean(std::span<const double> kappas);
/// Comparison baseline only: 1/V_f = sum 1/V_i on circular variances.
double fuse_circvar_stienne(std::span<const double> circ_variances);

/// Weighted-average fusion of mean and dispersion together.
AngularEstimate fuse_weighted(std::span<const AngularEstimate> estimates);
/// Plain-mean fusion of mean and dispersion together.
AngularEstimate fuse_mean(std::span<const AngularEstimate> estimates);

}  // namespace circfuse
