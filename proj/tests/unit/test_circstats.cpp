#include <array>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "circfuse/circstats.hpp"
#include "circfuse/distributions.hpp"
#include "circfuse/errors.hpp"
#include "oracles.hpp"

using namespace circfuse;

namespace {

std::vector<Angle> degs(std::initializer_list<double> ds) {
  std::vector<Angle> out;
  for (double d : ds) {
    out.push_back(Angle::from_degrees(d));
  }
  return out;
}

}  // namespace

TEST(Summarize, OrthogonalPair) {
  const auto s = summarize(degs({0, 90}));
  EXPECT_EQ(s.n, 2U);
  EXPECT_NEAR(s.c, 1.0, 1e-15);
  EXPECT_NEAR(s.s, 1.0, 1e-15);
  EXPECT_NEAR(s.r_bar, std::sqrt(2.0) / 2.0, 1e-15);
  EXPECT_NEAR(s.r_bar_sq, 0.5, 1e-15);
}

TEST(Summarize, IdenticalSamples) {
  const auto s = summarize(degs({90, 90, 90}));
  EXPECT_NEAR(s.c, 0.0, 1e-15);
  EXPECT_NEAR(s.s, 3.0, 1e-15);
  EXPECT_NEAR(s.r_bar, 1.0, 1e-15);
}

TEST(Summarize, AntipodalCancels) {
  const auto s = summarize(degs({0, 180}));
  EXPECT_NEAR(s.c, 0.0, 1e-15);
  EXPECT_NEAR(s.s, 0.0, 1e-15);
  EXPECT_NEAR(s.r_bar, 0.0, 1e-15);
}

TEST(Summarize, WeightedNormalisesByWeightSum) {
  const auto a = degs({0, 90});
  const std::array<double, 2> w{3.0, 1.0};
  const auto s = summarize(a, std::span<const double>(w));
  EXPECT_DOUBLE_EQ(s.weight_sum, 4.0);
  EXPECT_NEAR(s.c, 3.0, 1e-15);
  EXPECT_NEAR(s.s, 1.0, 1e-15);
  EXPECT_NEAR(s.r_bar, std::sqrt(10.0) / 4.0, 1e-15);
}

TEST(Summarize, Errors) {
  EXPECT_THROW(summarize(std::vector<Angle>{}), DomainError);
  const auto a = degs({0, 90});
  const std::array<double, 1> short_w{1.0};
  EXPECT_THROW(summarize(a, std::span<const double>(short_w)), DomainError);
  const std::array<double, 2> zero_w{1.0, 0.0};
  EXPECT_THROW(summarize(a, std::span<const double>(zero_w)), DomainError);
  const std::array<double, 2> neg_w{1.0, -2.0};
  EXPECT_THROW(summarize(a, std::span<const double>(neg_w)), DomainError);
}

TEST(MeanOrientation, CrossoverMeanIsZero) {
  EXPECT_NEAR(mean_orientation(summarize(degs({350, 10}))).radians(), 0.0, 1e-15);
}

TEST(MeanOrientation, Examples) {
  EXPECT_NEAR(mean_orientation(summarize(degs({90, 90}))).degrees(), 90.0, 1e-12);
  EXPECT_NEAR(mean_orientation(summarize(degs({0, 90, 180}))).degrees(), 90.0, 1e-12);
}

TEST(MeanOrientation, ZeroResultantThrows) {
  EXPECT_THROW(mean_orientation(summarize(degs({0, 180}))), UndefinedMeanError);
  EXPECT_THROW(mean_orientation(summarize(degs({0, 120, 240}))), UndefinedMeanError);
}

TEST(CircularVariance, Examples) {
  EXPECT_NEAR(circular_variance(summarize(degs({5, 5, 5}))), 0.0, 1e-15);
  EXPECT_NEAR(circular_variance(summarize(degs({0, 180}))), 1.0, 1e-15);
  EXPECT_NEAR(circular_variance(summarize(degs({0, 90}))), 1.0 - std::sqrt(2.0) / 2.0, 1e-15);
}

TEST(SsVariance, IdenticalSamplesGiveZero) {
  EXPECT_NEAR(ss_variance(degs({33, 33, 33, 33})), 0.0, 1e-20);
}

TEST(SsVariance, NeedsTwoSamples) {
  EXPECT_THROW(ss_variance(degs({10})), DomainError);
}

TEST(SsVariance, EqualsLinearSampleVarianceWithoutWrapping) {
  // Residuals well inside (-pi/2, pi/2): the ordinary unbiased variance of
  // the unwrapped values is the reference.
  const std::vector<double> raw{0.10, 0.35, -0.20, 0.05, 0.50, -0.15};
  std::vector<Angle> a;
  double mean = 0.0;
  for (double r : raw) {
    a.emplace_back(3.0 + r);
    mean += r;
  }
  mean /= static_cast<double>(raw.size());
  double var = 0.0;
  for (double r : raw) {
    var += (r - mean) * (r - mean);
  }
  var /= static_cast<double>(raw.size() - 1);
  // The circular mean differs slightly from the linear one; the residual
  // sum of squares about either agrees to second order.
  EXPECT_NEAR(ss_variance(a), var, 1e-4);
}

TEST(WnVariance, IdenticalSamplesGiveZero) {
  EXPECT_NEAR(wn_variance(summarize(degs({40, 40, 40, 40, 40}))), 0.0, 1e-12);
}

TEST(WnVariance, AntipodalPairIsTooDispersed) {
  EXPECT_THROW(wn_variance(summarize(degs({0, 180}))), DispersionTooHighError);
}

TEST(WnVariance, MatchesClosedForm) {
  const auto s = summarize(degs({0, 20, 50}));
  const double n = 3.0;
  const double expected = -std::log(n / (n - 1.0) * (s.r_bar_sq - 1.0 / n));
  EXPECT_NEAR(wn_variance(s), expected, 1e-14);
}

TEST(VmConcentration, Examples) {
  EXPECT_EQ(banerjee_kappa(0.0), 0.0);
  EXPECT_NEAR(banerjee_kappa(0.5), 0.5 * (2.0 - 0.25) / (1.0 - 0.25), 1e-15);
  EXPECT_NEAR(banerjee_kappa(0.5), 1.1666666666666667, 1e-15);
  EXPECT_THROW(banerjee_kappa(1.0), InfiniteConcentrationError);
  EXPECT_THROW(vm_concentration(summarize(degs({12, 12}))), InfiniteConcentrationError);
}

TEST(VmConcentration, UsesSummaryRBar) {
  const auto s = summarize(degs({0, 40, 80}));
  EXPECT_DOUBLE_EQ(vm_concentration(s), banerjee_kappa(s.r_bar));
}

// Sampling consistency at n = 1e5 (fixed seeds).

TEST(EstimatorConsistency, WnVarianceWithinTwoPercent) {
  for (double s2 : {0.05, 0.1, 0.3, 0.6, 1.0, 1.5}) {
    const auto x = sample_wn(WrappedNormalParams(Angle(0.4), s2), 100000, static_cast<std::uint64_t>(1000 + 1700 * s2));
    const double est = wn_variance(summarize(x));
    EXPECT_NEAR(est / s2, 1.0, 0.02) << "sigma^2 = " << s2;
  }
}

TEST(EstimatorConsistency, VmConcentrationTracksItsPopulationTarget) {
  // The estimator converges to banerjee_kappa(A(kappa)), A = I1/I0.
  for (double k : {1.0, 2.0, 5.0, 10.0, 20.0}) {
    const auto x = sample_vm(VonMisesParams(Angle(-1.0), k), 100000, 77 + static_cast<int>(k));
    const double target = banerjee_kappa(oracle::vm_mean_resultant(k));
    EXPECT_NEAR(vm_concentration(summarize(x)) / target, 1.0, 0.02) << "kappa = " << k;
  }
}

TEST(EstimatorConsistency, BanerjeeApproximationBias) {
  // Relative bias of the closed form itself, with A(kappa) from the series
  // oracle. Pinned regression values; the bias peaks near kappa = 5.
  const struct {
    double kappa;
    double bias;
  } rows[] = {{1.0, 0.0039}, {2.0, 0.0288}, {5.0, 0.0638}, {10.0, 0.0420}, {20.0, 0.0231}};
  for (const auto& r : rows) {
    const double b = banerjee_kappa(oracle::vm_mean_resultant(r.kappa)) / r.kappa - 1.0;
    EXPECT_NEAR(b, r.bias, 1e-4) << "kappa = " << r.kappa;
  }
}
