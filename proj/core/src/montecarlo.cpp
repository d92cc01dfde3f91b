#include "circfuse/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <thread>

#include "circfuse/circstats.hpp"
#include "circfuse/errors.hpp"
#include "circfuse/fusion.hpp"
#include "circfuse/rng.hpp"

namespace circfuse {
namespace {

// Means and sample covariance of (cos theta, sin theta), scaled to the
// covariance of the means.
struct TrigMoments {
  double n = 0.0;
  double c = 0.0;
  double s = 0.0;
  double var_c = 0.0;
  double var_s = 0.0;
  double cov_cs = 0.0;
};

TrigMoments trig_moments(std::span<const Angle> samples) {
  if (samples.size() < 2) {
    throw DomainError("need at least two samples for a standard error");
  }
  TrigMoments m;
  m.n = static_cast<double>(samples.size());
  for (const Angle a : samples) {
    m.c += std::cos(a.radians());
    m.s += std::sin(a.radians());
  }
  m.c /= m.n;
  m.s /= m.n;
  for (const Angle a : samples) {
    const double dc = std::cos(a.radians()) - m.c;
    const double ds = std::sin(a.radians()) - m.s;
    m.var_c += dc * dc;
    m.var_s += ds * ds;
    m.cov_cs += dc * ds;
  }
  const double scale = 1.0 / ((m.n - 1.0) * m.n);
  m.var_c *= scale;
  m.var_s *= scale;
  m.cov_cs *= scale;
  return m;
}

double delta_se(const TrigMoments& m, double grad_c, double grad_s) {
  const double var = grad_c * grad_c * m.var_c + grad_s * grad_s * m.var_s +
                     2.0 * grad_c * grad_s * m.cov_cs;
  return std::sqrt(std::max(0.0, var));
}

// d/dr of r (2 - r^2) / (1 - r^2)
double banerjee_derivative(double r) {
  const double r2 = r * r;
  const double denom = 1.0 - r2;
  return (2.0 - r2 + r2 * r2) / (denom * denom);
}

std::vector<Angle> draw(Family family, double native_dispersion, std::size_t n,
                        std::uint64_t seed) {
  const Angle mu(kSweepMu);
  if (family == Family::kWrappedNormal) {
    return sample_wn(WrappedNormalParams(mu, native_dispersion), n, seed);
  }
  return sample_vm(VonMisesParams(mu, native_dispersion), n, seed);
}

DispersionValue dispersion_of(Family family, double native) {
  return family == Family::kWrappedNormal ? DispersionValue::wn_variance(native)
                                          : DispersionValue::vm_kappa(native);
}

// Runs `body(i)` for every row; rows are independent, so any schedule gives
// the same result vector.
void for_each_row(std::size_t rows, RunOptions options,
                  const std::function<void(std::size_t)>& body) {
  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(rows, 1)));
  if (threads == 1) {
    for (std::size_t i = 0; i < rows; ++i) {
      body(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < rows; i = next++) {
        body(i);
      }
    });
  }
}

ExperimentResult failed_row(double grid_value, double predicted, const std::exception& e) {
  ExperimentResult row;
  row.grid_value = grid_value;
  row.predicted = predicted;
  row.status = RowStatus::kFailed;
  row.message = e.what();
  return row;
}

}  // namespace

Estimate estimate_wn_variance(std::span<const Angle> samples) {
  const double value = wn_variance(summarize(samples));
  const TrigMoments m = trig_moments(samples);
  const double base = m.c * m.c + m.s * m.s - 1.0 / m.n;
  return {value, delta_se(m, -2.0 * m.c / base, -2.0 * m.s / base)};
}

Estimate estimate_vm_kappa(std::span<const Angle> samples) {
  const CircularSampleSummary summary = summarize(samples);
  const double kappa = vm_concentration(summary);
  const TrigMoments m = trig_moments(samples);
  const double r = summary.r_bar;
  if (r <= 0.0) {
    return {kappa, std::numeric_limits<double>::infinity()};
  }
  const double dk = banerjee_derivative(r);
  return {kappa, delta_se(m, dk * m.c / r, dk * m.s / r)};
}

Estimate estimate_vm_inverse_kappa(std::span<const Angle> samples) {
  const Estimate k = estimate_vm_kappa(samples);
  if (!(k.value > 0.0) || resultant_vanishes(summarize(samples))) {
    throw DispersionTooHighError("estimated concentration is zero; 1/kappa diverges");
  }
  return {1.0 / k.value, k.std_error / (k.value * k.value)};
}

Estimate estimate_circ_variance(std::span<const Angle> samples) {
  const CircularSampleSummary summary = summarize(samples);
  const TrigMoments m = trig_moments(samples);
  const double r = summary.r_bar;
  if (r <= 0.0) {
    return {circular_variance(summary), std::numeric_limits<double>::infinity()};
  }
  return {circular_variance(summary), delta_se(m, -m.c / r, -m.s / r)};
}

Estimate estimate_ss_variance(std::span<const Angle> samples) {
  const double value = ss_variance(samples);
  const Angle alpha = mean_orientation(summarize(samples));
  const auto n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (const Angle a : samples) {
    mean += circ_distance(a, alpha);
  }
  mean /= n;
  double m2 = 0.0;
  double m4 = 0.0;
  for (const Angle a : samples) {
    const double d = circ_distance(a, alpha) - mean;
    const double d2 = d * d;
    m2 += d2;
    m4 += d2 * d2;
  }
  m2 /= n;
  m4 /= n;
  return {value, std::sqrt(std::max(0.0, m4 - m2 * m2) / n)};
}

bool ExperimentResult::within(double k_std_errors) const {
  return status == RowStatus::kOk && std::abs(mc_estimate - predicted) <= k_std_errors * mc_std_error;
}

void SweepConfig::validate() const {
  if (trials < 2) {
    throw ContractError("SweepConfig: trials must be >= 2");
  }
  if (grid.empty()) {
    throw ContractError("SweepConfig: grid is empty");
  }
  const bool fixed_ok = family == Family::kWrappedNormal ? fixed_dispersion > 0.0
                                                         : fixed_dispersion >= 0.0;
  if (!fixed_ok || !std::isfinite(fixed_dispersion)) {
    throw ContractError("SweepConfig: invalid sensor-1 dispersion");
  }
  for (const double g : grid) {
    if (!(g > 0.0) || !std::isfinite(g)) {
      throw ContractError("SweepConfig: grid values must be finite and > 0");
    }
  }
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0) || !(hi >= lo) || points == 0) {
    throw ContractError("log_grid: need 0 < lo <= hi and points >= 1");
  }
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    out[i] = std::exp(a + step * static_cast<double>(i));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<ExperimentResult> run_variance_experiment(Family family,
                                                      std::span<const double> grid,
                                                      std::size_t trials, std::uint64_t seed,
                                                      VarianceEstimator estimator,
                                                      RunOptions options) {
  if (grid.empty() || trials < 2) {
    throw ContractError("run_variance_experiment: need a grid and at least two trials");
  }
  std::vector<ExperimentResult> rows(grid.size());
  for_each_row(grid.size(), options, [&](std::size_t i) {
    const double param = grid[i];
    double predicted = param;
    if (estimator == VarianceEstimator::kStupavskySymons && family == Family::kVonMises) {
      predicted = 1.0 / param;
    }
    try {
      const std::vector<Angle> samples = draw(family, param, trials, derive_seed(seed, i));
      Estimate est;
      if (estimator == VarianceEstimator::kStupavskySymons) {
        est = estimate_ss_variance(samples);
      } else if (family == Family::kWrappedNormal) {
        est = estimate_wn_variance(samples);
      } else {
        est = estimate_vm_kappa(samples);
      }
      ExperimentResult row;
      row.grid_value = param;
      row.predicted = predicted;
      row.mc_estimate = est.value;
      row.mc_std_error = est.std_error;
      rows[i] = row;
    } catch (const std::exception& e) {
      rows[i] = failed_row(param, predicted, e);
    }
  });
  return rows;
}

std::vector<ExperimentResult> run_fusion_experiment(const SweepConfig& config, FusionRule rule,
                                                    RunOptions options) {
  config.validate();
  const Family family = config.family;
  std::vector<ExperimentResult> rows(config.grid.size());
  for_each_row(config.grid.size(), options, [&](std::size_t i) {
    const double grid_value = config.grid[i];
    const double native1 = config.fixed_dispersion;
    const double native2 = family == Family::kWrappedNormal ? grid_value : 1.0 / grid_value;
    double predicted = std::numeric_limits<double>::quiet_NaN();
    try {
      const std::array<double, 2> natives{native1, native2};
      if (family == Family::kWrappedNormal) {
        predicted = rule == FusionRule::kWeighted ? fuse_variance_weighted(natives)
                                                  : fuse_variance_mean(natives);
      } else {
        predicted = 1.0 / (rule == FusionRule::kWeighted ? fuse_kappa_weighted(natives)
                                                         : fuse_kappa_mean(natives));
      }

      const std::uint64_t row_seed = derive_seed(config.seed, i);
      const std::vector<Angle> s1 = draw(family, native1, config.trials, derive_seed(row_seed, 1));
      const std::vector<Angle> s2 = draw(family, native2, config.trials, derive_seed(row_seed, 2));
      const DispersionValue d1 = dispersion_of(family, native1);
      const DispersionValue d2 = dispersion_of(family, native2);

      std::vector<Angle> fused;
      fused.reserve(config.trials);
      for (std::size_t t = 0; t < config.trials; ++t) {
        const std::array<AngularEstimate, 2> pair{AngularEstimate{s1[t], d1},
                                                  AngularEstimate{s2[t], d2}};
        fused.push_back(rule == FusionRule::kWeighted ? fuse_mean_weighted(pair)
                                                      : fuse_mean_plain(pair));
      }
      const Estimate est = family == Family::kWrappedNormal ? estimate_wn_variance(fused)
                                                            : estimate_vm_inverse_kappa(fused);
      ExperimentResult row;
      row.grid_value = grid_value;
      row.predicted = predicted;
      row.mc_estimate = est.value;
      row.mc_std_error = est.std_error;
      rows[i] = row;
    } catch (const std::exception& e) {
      rows[i] = failed_row(grid_value, predicted, e);
    }
  });
  return rows;
}

std::vector<ExperimentResult> run_stienne_experiment(const SweepConfig& config,
                                                     RunOptions options) {
  config.validate();
  if (config.family != Family::kVonMises) {
    throw ContractError("run_stienne_experiment: von Mises family only");
  }
  std::vector<ExperimentResult> rows(config.grid.size());
  for_each_row(config.grid.size(), options, [&](std::size_t i) {
    const double grid_value = config.grid[i];
    const double kappa1 = config.fixed_dispersion;
    const double kappa2 = 1.0 / grid_value;
    double predicted = std::numeric_limits<double>::quiet_NaN();
    try {
      const std::array<double, 2> v{1.0 - population_r_bar(Family::kVonMises, kappa1),
                                    1.0 - population_r_bar(Family::kVonMises, kappa2)};
      predicted = fuse_circvar_stienne(v);

      const std::uint64_t row_seed = derive_seed(config.seed, i);
      const std::vector<Angle> s1 = draw(Family::kVonMises, kappa1, config.trials,
                                         derive_seed(row_seed, 1));
      const std::vector<Angle> s2 = draw(Family::kVonMises, kappa2, config.trials,
                                         derive_seed(row_seed, 2));
      const DispersionValue d1 = DispersionValue::vm_kappa(kappa1);
      const DispersionValue d2 = DispersionValue::vm_kappa(kappa2);
      std::vector<Angle> fused;
      fused.reserve(config.trials);
      for (std::size_t t = 0; t < config.trials; ++t) {
        const std::array<AngularEstimate, 2> pair{AngularEstimate{s1[t], d1},
                                                  AngularEstimate{s2[t], d2}};
        fused.push_back(fuse_mean_weighted(pair));
      }
      const Estimate est = estimate_circ_variance(fused);
      ExperimentResult row;
      row.grid_value = grid_value;
      row.predicted = predicted;
      row.mc_estimate = est.value;
      row.mc_std_error = est.std_error;
      row.reference = std::min(v[0], v[1]);
      rows[i] = row;
    } catch (const std::exception& e) {
      rows[i] = failed_row(grid_value, predicted, e);
    }
  });
  return rows;
}

std::string to_csv(std::span<const ExperimentResult> rows) {
  std::string out = kCsvHeader;
  out += '\n';
  std::array<char, 128> buf{};
  for (const auto& r : rows) {
    const bool ok = r.status == RowStatus::kOk;
    std::snprintf(buf.data(), buf.size(), "%.9g,%.9g,%.9g,%.9g,%s\n", r.grid_value, r.predicted,
                  ok ? r.mc_estimate : std::numeric_limits<double>::quiet_NaN(),
                  ok ? r.mc_std_error : std::numeric_limits<double>::quiet_NaN(),
                  ok ? "ok" : "failed");
    out += buf.data();
  }
  return out;
}

}  // namespace circfuse
