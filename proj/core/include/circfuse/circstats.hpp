#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "circfuse/angle.hpp"

namespace circfuse {

/// Resultant-vector statistics of a (possibly weighted) set of angles.
///
/// `c` and `s` are the (weighted) sums of cosines and sines. `weight_sum`
/// equals `n` for unit weights; the mean resultant length is normalised by it.
struct CircularSampleSummary {
  std::size_t n = 0;
  double weight_sum = 0.0;
  double c = 0.0;
  double s = 0.0;
  double r_bar = 0.0;     // ||R|| / weight_sum, in [0, 1]
  double r_bar_sq = 0.0;  // r_bar^2
};

/// Builds the resultant-vector summary. Throws DomainError on an empty sample,
/// a length mismatch, or a non-positive weight.
CircularSampleSummary summarize(std::span<const Angle> samples,
                                std::optional<std::span<const double>> weights = std::nullopt);

/// True when the resultant is zero up to floating-point cancellation.
bool resultant_vanishes(const CircularSampleSummary& summary);

/// Direction of the resultant vector. Throws UndefinedMeanError when the
/// resultant has (numerically) zero length.
Angle mean_orientation(const CircularSampleSummary& summary);

/// V = 1 - r_bar, clamped into [0, 1].
double circular_variance(const CircularSampleSummary& summary);

/// Unbiased linear-analogue variance of the shortest-arc residuals about the
/// circular mean: (sum d^2 - n * mean(d)^2) / (n - 1). Needs n >= 2.
double ss_variance(std::span<const Angle> samples);

/// Wrapped-Normal variance from the bias-corrected squared mean resultant
/// length: -ln(n/(n-1) * (r_bar_sq - 1/n)).
/// Throws DispersionTooHighError when the log argument is not positive.
double wn_variance(const CircularSampleSummary& summary);

/// Banerjee's closed-form concentration approximation for the 2-D von Mises:
/// r(2 - r^2) / (1 - r^2). Throws InfiniteConcentrationError as r -> 1.
double vm_concentration(const CircularSampleSummary& summary);

/// Same formula on a bare mean resultant length.
double banerjee_kappa(double r_bar);

}  // namespace circfuse
