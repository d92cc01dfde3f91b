#include "circfuse/bessel.hpp"

#include <cmath>

#include "circfuse/angle.hpp"
#include "circfuse/errors.hpp"

namespace circfuse {
namespace {

constexpr double kSeriesLimit = 15.0;

void check_args(int order, double x) {
  if (order != 0 && order != 1) {
    throw DomainError("bessel_i: only orders 0 and 1 are supported");
  }
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("bessel_i: argument must be finite and non-negative");
  }
}

// sum_k (x/2)^(2k+n) / (k! (k+n)!)
double series(int order, double x) {
  const double q = 0.25 * x * x;
  double term = order == 0 ? 1.0 : 0.5 * x;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + order));
    sum += term;
    if (term < sum * 1e-17) {
      break;
    }
  }
  return sum;
}

// e^{-x} I_n(x) ~ 1/sqrt(2 pi x) * sum_k (-1)^k a_k(n) / x^k,
// a_k = prod_{j=1..k} (4n^2 - (2j-1)^2) / (k! 8^k).
double asymptotic_scaled(int order, double x) {
  const double mu = 4.0 * order * order;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(next) >= std::abs(term)) {
      break;  // terms started growing: series is past its optimal truncation
    }
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) {
      break;
    }
  }
  return sum / std::sqrt(kTwoPi * x);
}

}  // namespace

double bessel_i(int order, double x) {
  check_args(order, x);
  if (x < kSeriesLimit) {
    return series(order, x);
  }
  return asymptotic_scaled(order, x) * std::exp(x);
}

double bessel_i_scaled(int order, double x) {
  check_args(order, x);
  if (x < kSeriesLimit) {
    return series(order, x) * std::exp(-x);
  }
  return asymptotic_scaled(order, x);
}

double bessel_i1_i0_ratio(double x) {
  check_args(0, x);
  if (x < kSeriesLimit) {
    return series(1, x) / series(0, x);
  }
  return asymptotic_scaled(1, x) / asymptotic_scaled(0, x);
}

}  // namespace circfuse
