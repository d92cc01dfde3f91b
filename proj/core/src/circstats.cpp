#include "circfuse/circstats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "circfuse/errors.hpp"

namespace circfuse {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

CircularSampleSummary summarize(std::span<const Angle> samples,
                                std::optional<std::span<const double>> weights) {
  if (samples.empty()) {
    throw DomainError("summarize: empty sample set");
  }
  if (weights && weights->size() != samples.size()) {
    throw DomainError("summarize: weights and samples differ in length");
  }

  CircularSampleSummary out;
  out.n = samples.size();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double w = 1.0;
    if (weights) {
      w = (*weights)[i];
      if (!(w > 0.0) || !std::isfinite(w)) {
        throw DomainError("summarize: weights must be positive and finite");
      }
    }
    const double theta = samples[i].radians();
    out.c += w * std::cos(theta);
    out.s += w * std::sin(theta);
    out.weight_sum += w;
  }
  const double cm = out.c / out.weight_sum;
  const double sm = out.s / out.weight_sum;
  out.r_bar_sq = std::min(1.0, cm * cm + sm * sm);
  out.r_bar = std::sqrt(out.r_bar_sq);
  return out;
}

bool resultant_vanishes(const CircularSampleSummary& summary) {
  // Cancellation leaves residue of order n*eps (e.g. sin(pi) != 0 in double).
  const double tol = 16.0 * kEps * static_cast<double>(std::max<std::size_t>(summary.n, 1));
  return summary.weight_sum <= 0.0 || summary.r_bar <= tol;
}

Angle mean_orientation(const CircularSampleSummary& summary) {
  if (resultant_vanishes(summary)) {
    throw UndefinedMeanError("mean_orientation: resultant vector has zero length");
  }
  return Angle(std::atan2(summary.s, summary.c));
}

double circular_variance(const CircularSampleSummary& summary) {
  return std::clamp(1.0 - summary.r_bar, 0.0, 1.0);
}

double ss_variance(std::span<const Angle> samples) {
  if (samples.size() < 2) {
    throw DomainError("ss_variance: need at least two samples");
  }
  const Angle alpha = mean_orientation(summarize(samples));
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const Angle theta : samples) {
    const double d = circ_distance(theta, alpha);
    sum += d;
    sum_sq += d * d;
  }
  const auto n = static_cast<double>(samples.size());
  const double mean = sum / n;
  return std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
}

double wn_variance(const CircularSampleSummary& summary) {
  if (summary.n < 2) {
    throw DomainError("wn_variance: need at least two samples");
  }
  const auto n = static_cast<double>(summary.n);
  const double arg = n / (n - 1.0) * (summary.r_bar_sq - 1.0 / n);
  if (!(arg > 0.0)) {
    throw DispersionTooHighError(
        "wn_variance: bias-corrected R^2 is not positive; sample is indistinguishable "
        "from uniform at this size");
  }
  return std::max(0.0, -std::log(arg));
}

double banerjee_kappa(double r_bar) {
  if (!(r_bar >= 0.0) || r_bar > 1.0) {
    throw DomainError("banerjee_kappa: mean resultant length must lie in [0, 1]");
  }
  const double r2 = r_bar * r_bar;
  const double denom = 1.0 - r2;
  if (denom <= 4.0 * kEps) {
    throw InfiniteConcentrationError("vm_concentration: mean resultant length is 1");
  }
  return r_bar * (2.0 - r2) / denom;
}

double vm_concentration(const CircularSampleSummary& summary) {
  return banerjee_kappa(summary.r_bar);
}

}  // namespace circfuse
