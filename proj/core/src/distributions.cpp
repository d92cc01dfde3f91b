#include "circfuse/distributions.hpp"

#include <algorithm>
#include <cmath>

#include "circfuse/bessel.hpp"
#include "circfuse/errors.hpp"
#include "circfuse/rng.hpp"

namespace circfuse {
namespace {

// Below this the Best-Fisher envelope parameters lose precision and the
// density is uniform to within 1e-9 anyway.
constexpr double kUniformKappa = 1e-9;

void check_dispersion(Family family, double dispersion) {
  if (!std::isfinite(dispersion)) {
    throw DomainError("dispersion must be finite");
  }
  if (dispersion < 0.0) {
    throw DomainError(family == Family::kWrappedNormal ? "sigma^2 must be non-negative"
                                                       : "kappa must be non-negative");
  }
}

}  // namespace

const char* to_string(Family family) {
  return family == Family::kWrappedNormal ? "wn" : "vm";
}

VonMisesParams::VonMisesParams(Angle mu_, double kappa_) : mu(mu_), kappa(kappa_) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw DomainError("VonMisesParams: kappa must be finite and >= 0");
  }
}

WrappedNormalParams::WrappedNormalParams(Angle mu_, double sigma_sq_)
    : mu(mu_), sigma_sq(sigma_sq_) {
  if (!(sigma_sq > 0.0) || !std::isfinite(sigma_sq)) {
    throw DomainError("WrappedNormalParams: sigma_sq must be finite and > 0");
  }
}

double vm_pdf(Angle theta, const VonMisesParams& params) {
  const double k = params.kappa;
  // exp(k cos d) / (2 pi I0(k)) written with the scaled Bessel function so
  // large k does not overflow.
  const double d = theta.radians() - params.mu.radians();
  return std::exp(k * (std::cos(d) - 1.0)) / (kTwoPi * bessel_i_scaled(0, k));
}

int wn_series_terms(double sigma_sq) {
  const double sigma = std::sqrt(sigma_sq);
  return std::max(3, static_cast<int>(std::ceil(5.0 * sigma / kPi)) + 2);
}

double wn_pdf(Angle theta, const WrappedNormalParams& params) {
  const double d = wrap_angle(theta.radians() - params.mu.radians());
  const double two_var = 2.0 * params.sigma_sq;
  const int terms = wn_series_terms(params.sigma_sq);
  double sum = 0.0;
  for (int k = -terms; k <= terms; ++k) {
    const double x = d + kTwoPi * k;
    sum += std::exp(-x * x / two_var);
  }
  return sum / std::sqrt(kPi * two_var);
}

std::vector<Angle> sample_vm(const VonMisesParams& params, std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<Angle> out;
  out.reserve(n);
  const double k = params.kappa;
  const double mu = params.mu.radians();
  if (k < kUniformKappa) {
    for (std::size_t i = 0; i < n; ++i) {
      out.emplace_back(mu + kTwoPi * rng.uniform() - kPi);
    }
    return out;
  }

  const double tau = 1.0 + std::sqrt(1.0 + 4.0 * k * k);
  const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * k);
  const double r = (1.0 + rho * rho) / (2.0 * rho);

  while (out.size() < n) {
    const double z = std::cos(kPi * rng.uniform());
    const double f = (1.0 + r * z) / (r + z);
    const double c = k * (r - f);
    const double u2 = rng.uniform_open();
    const double u3 = rng.uniform();
    if (c * (2.0 - c) - u2 <= 0.0 && std::log(c / u2) + 1.0 - c < 0.0) {
      continue;
    }
    const double w = std::acos(std::clamp(f, -1.0, 1.0));
    out.emplace_back(u3 > 0.5 ? mu + w : mu - w);
  }
  return out;
}

std::vector<Angle> sample_wn(const WrappedNormalParams& params, std::size_t n,
                             std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<Angle> out;
  out.reserve(n);
  const double sigma = std::sqrt(params.sigma_sq);
  const double mu = params.mu.radians();
  for (std::size_t i = 0; i < n; ++i) {
    out.emplace_back(mu + sigma * rng.normal());
  }
  return out;
}

double population_r_bar(Family family, double dispersion) {
  check_dispersion(family, dispersion);
  if (family == Family::kWrappedNormal) {
    return std::exp(-0.5 * dispersion);
  }
  return bessel_i1_i0_ratio(dispersion);
}

double expected_r_bar_sq(Family family, double dispersion, std::size_t n) {
  if (n == 0) {
    throw DomainError("expected_r_bar_sq: n must be >= 1");
  }
  const double rho = population_r_bar(family, dispersion);
  const auto nn = static_cast<double>(n);
  return 1.0 / nn + (nn - 1.0) / nn * rho * rho;
}

}  // namespace circfuse
