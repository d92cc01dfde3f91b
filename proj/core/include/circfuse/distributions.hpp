#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "circfuse/angle.hpp"

namespace circfuse {

enum class Family { kWrappedNormal, kVonMises };

const char* to_string(Family family);

/// von Mises location/concentration. kappa >= 0 and finite.
struct VonMisesParams {
  Angle mu;
  double kappa = 0.0;

  VonMisesParams(Angle mu_, double kappa_);
};

/// Wrapped Normal location/variance (of the unwrapped normal). sigma_sq > 0.
struct WrappedNormalParams {
  Angle mu;
  double sigma_sq = 1.0;

  WrappedNormalParams(Angle mu_, double sigma_sq_);
};

double vm_pdf(Angle theta, const VonMisesParams& params);

/// Number of wrap terms kept on each side of the central one.
int wn_series_terms(double sigma_sq);

double wn_pdf(Angle theta, const WrappedNormalParams& params);

/// Best-Fisher rejection sampler (wrapped-Cauchy envelope). Deterministic in
/// `seed`.
std::vector<Angle> sample_vm(const VonMisesParams& params, std::size_t n, std::uint64_t seed);

/// Normal draws on the line, wrapped. Deterministic in `seed`.
std::vector<Angle> sample_wn(const WrappedNormalParams& params, std::size_t n,
                             std::uint64_t seed);

/// Population mean resultant length: e^{-sigma^2/2} (WN) or I1/I0 (VM).
/// `dispersion` is sigma^2 for WN and kappa for VM.
double population_r_bar(Family family, double dispersion);

/// Expected squared mean resultant length of n i.i.d. draws:
/// 1/n + (n-1)/n * a, with a = e^{-sigma^2} (WN) or (I1(k)/I0(k))^2 (VM).
double expected_r_bar_sq(Family family, double dispersion, std::size_t n);

}  // namespace circfuse
