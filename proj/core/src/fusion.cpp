#include "circfuse/fusion.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "circfuse/circstats.hpp"
#include "circfuse/errors.hpp"

namespace circfuse {
namespace {

void require_nonempty(std::size_t n, const char* what) {
  if (n == 0) {
    throw ContractError(std::string(what) + ": nothing to fuse");
  }
}

DispersionKind common_kind(std::span<const AngularEstimate> estimates, const char* what) {
  require_nonempty(estimates.size(), what);
  const DispersionKind kind = estimates.front().dispersion.kind();
  for (const auto& e : estimates) {
    if (e.dispersion.kind() != kind) {
      throw ContractError(std::string(what) +
                          ": mixed dispersion kinds; convert explicitly first");
    }
  }
  return kind;
}

std::vector<double> values_of(std::span<const AngularEstimate> estimates) {
  std::vector<double> out;
  out.reserve(estimates.size());
  for (const auto& e : estimates) {
    out.push_back(e.dispersion.value());
  }
  return out;
}

}  // namespace

const char* to_string(DispersionKind kind) {
  switch (kind) {
    case DispersionKind::kWnVariance:
      return "wn_variance";
    case DispersionKind::kVmKappa:
      return "vm_kappa";
    case DispersionKind::kCircVariance:
      return "circ_variance";
  }
  return "unknown";
}

DispersionValue DispersionValue::wn_variance(double sigma_sq) {
  if (!(sigma_sq > 0.0) || !std::isfinite(sigma_sq)) {
    throw DomainError("wn_variance dispersion must be finite and > 0");
  }
  return {DispersionKind::kWnVariance, sigma_sq};
}

DispersionValue DispersionValue::vm_kappa(double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw DomainError("vm_kappa dispersion must be finite and >= 0");
  }
  return {DispersionKind::kVmKappa, kappa};
}

DispersionValue DispersionValue::circ_variance(double v) {
  if (!(v > 0.0) || v > 1.0) {
    throw DomainError("circular variance must lie in (0, 1]");
  }
  return {DispersionKind::kCircVariance, v};
}

DispersionValue DispersionValue::converted_to(DispersionKind target) const {
  if (target == kind_) {
    return *this;
  }
  if (kind_ == DispersionKind::kWnVariance && target == DispersionKind::kVmKappa) {
    return vm_kappa(1.0 / value_);
  }
  if (kind_ == DispersionKind::kVmKappa && target == DispersionKind::kWnVariance) {
    return wn_variance(1.0 / value_);
  }
  throw ContractError(std::string("cannot convert ") + to_string(kind_) + " to " +
                      to_string(target));
}

double DispersionValue::weight() const {
  switch (kind_) {
    case DispersionKind::kWnVariance:
      return 1.0 / value_;
    case DispersionKind::kVmKappa:
      return value_;
    case DispersionKind::kCircVariance:
      break;
  }
  throw ContractError("circular variance has no maximum-likelihood weight");
}

double DispersionValue::as_variance() const {
  if (kind_ == DispersionKind::kVmKappa) {
    return value_ > 0.0 ? 1.0 / value_ : std::numeric_limits<double>::infinity();
  }
  return value_;
}

Angle fuse_mean_weighted(std::span<const AngularEstimate> estimates) {
  const DispersionKind kind = common_kind(estimates, "fuse_mean_weighted");
  if (kind == DispersionKind::kCircVariance) {
    throw ContractError("fuse_mean_weighted: needs WN variances or VM concentrations");
  }
  if (estimates.size() == 1) {
    return estimates.front().angle;
  }
  std::vector<Angle> angles;
  std::vector<double> weights;
  for (const auto& e : estimates) {
    const double w = e.dispersion.weight();
    if (w > 0.0) {
      angles.push_back(e.angle);
      weights.push_back(w);
    }
  }
  if (angles.empty()) {
    throw UndefinedMeanError("fuse_mean_weighted: every estimate has zero weight");
  }
  return mean_orientation(summarize(angles, std::span<const double>(weights)));
}

Angle fuse_mean_plain(std::span<const AngularEstimate> estimates) {
  require_nonempty(estimates.size(), "fuse_mean_plain");
  if (estimates.size() == 1) {
    return estimates.front().angle;
  }
  std::vector<Angle> angles;
  angles.reserve(estimates.size());
  for (const auto& e : estimates) {
    angles.push_back(e.angle);
  }
  return mean_orientation(summarize(angles));
}

double fuse_variance_weighted(std::span<const double> variances) {
  require_nonempty(variances.size(), "fuse_variance_weighted");
  double info = 0.0;
  for (const double v : variances) {
    if (!(v > 0.0)) {
      throw DomainError("fuse_variance_weighted: variances must be > 0");
    }
    info += 1.0 / v;
  }
  return variances.size() == 1 ? variances.front() : 1.0 / info;
}

double fuse_kappa_weighted(std::span<const double> kappas) {
  require_nonempty(kappas.size(), "fuse_kappa_weighted");
  double sum = 0.0;
  for (const double k : kappas) {
    if (!(k >= 0.0)) {
      throw DomainError("fuse_kappa_weighted: concentrations must be >= 0");
    }
    sum += k;
  }
  return sum;
}

double fuse_variance_mean(std::span<const double> variances) {
  require_nonempty(variances.size(), "fuse_variance_mean");
  double sum = 0.0;
  for (const double v : variances) {
    if (!(v > 0.0)) {
      throw DomainError("fuse_variance_mean: variances must be > 0");
    }
    sum += v;
  }
  const auto n = static_cast<double>(variances.size());
  return sum / (n * n);
}

double fuse_kappa_mean(std::span<const double> kappas) {
  require_nonempty(kappas.size(), "fuse_kappa_mean");
  double inv_sum = 0.0;
  for (const double k : kappas) {
    if (!(k > 0.0)) {
      throw DomainError("fuse_kappa_mean: concentrations must be > 0");
    }
    inv_sum += 1.0 / k;
  }
  if (kappas.size() == 1) {
    return kappas.front();
  }
  const auto n = static_cast<double>(kappas.size());
  return n * n / inv_sum;
}

double fuse_circvar_stienne(std::span<const double> circ_variances) {
  require_nonempty(circ_variances.size(), "fuse_circvar_stienne");
  double inv_sum = 0.0;
  for (const double v : circ_variances) {
    if (!(v > 0.0) || v > 1.0) {
      throw DomainError("fuse_circvar_stienne: circular variances must lie in (0, 1]");
    }
    inv_sum += 1.0 / v;
  }
  return circ_variances.size() == 1 ? circ_variances.front() : 1.0 / inv_sum;
}

AngularEstimate fuse_weighted(std::span<const AngularEstimate> estimates) {
  const DispersionKind kind = common_kind(estimates, "fuse_weighted");
  if (estimates.size() == 1) {
    return estimates.front();
  }
  const std::vector<double> values = values_of(estimates);
  switch (kind) {
    case DispersionKind::kWnVariance:
      return {fuse_mean_weighted(estimates),
              DispersionValue::wn_variance(fuse_variance_weighted(values))};
    case DispersionKind::kVmKappa:
      return {fuse_mean_weighted(estimates),
              DispersionValue::vm_kappa(fuse_kappa_weighted(values))};
    case DispersionKind::kCircVariance:
      break;
  }
  throw ContractError("fuse_weighted: circular variance is a comparison baseline only");
}

AngularEstimate fuse_mean(std::span<const AngularEstimate> estimates) {
  const DispersionKind kind = common_kind(estimates, "fuse_mean");
  if (estimates.size() == 1) {
    return estimates.front();
  }
  const std::vector<double> values = values_of(estimates);
  switch (kind) {
    case DispersionKind::kWnVariance:
      return {fuse_mean_plain(estimates),
              DispersionValue::wn_variance(fuse_variance_mean(values))};
    case DispersionKind::kVmKappa:
      return {fuse_mean_plain(estimates), DispersionValue::vm_kappa(fuse_kappa_mean(values))};
    case DispersionKind::kCircVariance:
      break;
  }
  throw ContractError("fuse_mean: circular variance is a comparison baseline only");
}

}  // namespace circfuse
