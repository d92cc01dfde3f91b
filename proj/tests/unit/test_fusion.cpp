#include <array>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "circfuse/circstats.hpp"
#include "circfuse/errors.hpp"
#include "circfuse/fusion.hpp"

using namespace circfuse;

namespace {

AngularEstimate wn(double deg, double s2) {
  return {Angle::from_degrees(deg), DispersionValue::wn_variance(s2)};
}
AngularEstimate vm(double deg, double k) {
  return {Angle::from_degrees(deg), DispersionValue::vm_kappa(k)};
}

}  // namespace

TEST(DispersionValue, RangesPerKind) {
  EXPECT_THROW(DispersionValue::wn_variance(0.0), DomainError);
  EXPECT_THROW(DispersionValue::wn_variance(INFINITY), DomainError);
  EXPECT_NO_THROW(DispersionValue::vm_kappa(0.0));
  EXPECT_THROW(DispersionValue::vm_kappa(-0.1), DomainError);
  EXPECT_THROW(DispersionValue::circ_variance(0.0), DomainError);
  EXPECT_THROW(DispersionValue::circ_variance(1.01), DomainError);
  EXPECT_NO_THROW(DispersionValue::circ_variance(1.0));
}

TEST(DispersionValue, ReciprocalConversion) {
  const auto k = DispersionValue::wn_variance(0.25).converted_to(DispersionKind::kVmKappa);
  EXPECT_EQ(k.kind(), DispersionKind::kVmKappa);
  EXPECT_DOUBLE_EQ(k.value(), 4.0);
  EXPECT_DOUBLE_EQ(k.converted_to(DispersionKind::kWnVariance).value(), 0.25);
  EXPECT_EQ(k.converted_to(DispersionKind::kVmKappa), k);
  EXPECT_THROW((void)DispersionValue::circ_variance(0.5).converted_to(DispersionKind::kVmKappa),
               ContractError);
  EXPECT_THROW((void)DispersionValue::vm_kappa(0.0).converted_to(DispersionKind::kWnVariance),
               DomainError);
}

TEST(DispersionValue, WeightsAndVariance) {
  EXPECT_DOUBLE_EQ(DispersionValue::wn_variance(0.5).weight(), 2.0);
  EXPECT_DOUBLE_EQ(DispersionValue::vm_kappa(3.0).weight(), 3.0);
  EXPECT_THROW((void)DispersionValue::circ_variance(0.5).weight(), ContractError);
  EXPECT_DOUBLE_EQ(DispersionValue::vm_kappa(4.0).as_variance(), 0.25);
  EXPECT_TRUE(std::isinf(DispersionValue::vm_kappa(0.0).as_variance()));
}

TEST(FuseMeanWeighted, CrossoverIsZero) {
  const std::array<AngularEstimate, 2> e{wn(350, 0.3), wn(10, 0.3)};
  EXPECT_NEAR(fuse_mean_weighted(e).radians(), 0.0, 1e-12);
}

TEST(FuseMeanWeighted, EqualKappaSymmetry) {
  const std::array<AngularEstimate, 2> e{vm(0, 5), vm(90, 5)};
  EXPECT_NEAR(fuse_mean_weighted(e).degrees(), 45.0, 1e-12);
}

TEST(FuseMeanWeighted, DominantWeight) {
  const std::array<AngularEstimate, 2> e{wn(0, 0.1), wn(90, 1e9)};
  EXPECT_NEAR(fuse_mean_weighted(e).radians(), 0.0, 1e-4);
}

TEST(FuseMeanWeighted, Errors) {
  const std::array<AngularEstimate, 2> mixed{wn(0, 0.1), vm(10, 2)};
  EXPECT_THROW(fuse_mean_weighted(mixed), ContractError);
  EXPECT_THROW(fuse_mean_weighted(std::vector<AngularEstimate>{}), ContractError);
  const std::array<AngularEstimate, 2> opposite{vm(0, 2), vm(180, 2)};
  EXPECT_THROW(fuse_mean_weighted(opposite), UndefinedMeanError);
  const std::array<AngularEstimate, 2> uninformative{vm(0, 0), vm(30, 0)};
  EXPECT_THROW(fuse_mean_weighted(uninformative), UndefinedMeanError);
  const std::array<AngularEstimate, 2> circ{
      AngularEstimate{Angle(0.0), DispersionValue::circ_variance(0.2)},
      AngularEstimate{Angle(0.1), DispersionValue::circ_variance(0.2)}};
  EXPECT_THROW(fuse_mean_weighted(circ), ContractError);
}

TEST(FuseMeanWeighted, ZeroWeightEstimateIsIgnored) {
  const std::array<AngularEstimate, 2> e{vm(40, 2), vm(-100, 0)};
  EXPECT_NEAR(fuse_mean_weighted(e).degrees(), 40.0, 1e-12);
}

TEST(FuseMeanPlain, IgnoresDispersion) {
  const std::array<AngularEstimate, 2> e{wn(0, 0.1), wn(90, 1e9)};
  EXPECT_NEAR(fuse_mean_plain(e).degrees(), 45.0, 1e-12);
}

TEST(FuseVarianceWeighted, Examples) {
  EXPECT_DOUBLE_EQ(fuse_variance_weighted(std::vector<double>{0.3, 0.3}), 0.15);
  EXPECT_NEAR(fuse_variance_weighted(std::vector<double>{0.3, 1e9}), 0.3, 1e-9);
  EXPECT_NEAR(fuse_variance_weighted(std::vector<double>{0.3, 1e-12}), 0.0, 1e-11);
  EXPECT_THROW(fuse_variance_weighted(std::vector<double>{0.3, 0.0}), DomainError);
  EXPECT_THROW(fuse_variance_weighted(std::vector<double>{}), ContractError);
}

TEST(FuseKappaWeighted, Examples) {
  EXPECT_DOUBLE_EQ(fuse_kappa_weighted(std::vector<double>{2, 3}), 5.0);
  EXPECT_DOUBLE_EQ(fuse_kappa_weighted(std::vector<double>{1.7, 0}), 1.7);
  EXPECT_DOUBLE_EQ(fuse_kappa_weighted(std::vector<double>{0.5, 0.5}), 1.0);
  EXPECT_THROW(fuse_kappa_weighted(std::vector<double>{1, -1}), DomainError);
}

TEST(FuseVarianceMean, Examples) {
  EXPECT_DOUBLE_EQ(fuse_variance_mean(std::vector<double>{0.3, 0.3}), 0.15);
  EXPECT_NEAR(fuse_variance_mean(std::vector<double>{0.4, 1e-15}), 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(fuse_variance_mean(std::vector<double>{0.3, 0.1}), 0.1);
  EXPECT_THROW(fuse_variance_mean(std::vector<double>{0.3, -1}), DomainError);
}

TEST(FuseKappaMean, Examples) {
  EXPECT_DOUBLE_EQ(fuse_kappa_mean(std::vector<double>{2, 2}), 4.0);
  EXPECT_DOUBLE_EQ(fuse_kappa_mean(std::vector<double>{7.5, 7.5}), 15.0);
  EXPECT_DOUBLE_EQ(fuse_kappa_mean(std::vector<double>{1, 3}), 3.0);
  EXPECT_THROW(fuse_kappa_mean(std::vector<double>{1, 0}), DomainError);
}

TEST(FuseCircvarStienne, Examples) {
  EXPECT_DOUBLE_EQ(fuse_circvar_stienne(std::vector<double>{0.5, 0.5}), 0.25);
  const double v = fuse_circvar_stienne(std::vector<double>{0.2, 1.0});
  EXPECT_NEAR(v, 1.0 / 6.0, 1e-15);
  EXPECT_GT(0.2 - v, 0.03);
  EXPECT_THROW(fuse_circvar_stienne(std::vector<double>{0.0, 0.5}), DomainError);
  EXPECT_THROW(fuse_circvar_stienne(std::vector<double>{1.5}), DomainError);
}

TEST(SingleEstimate, EveryOperatorIsIdentity) {
  const std::array<AngularEstimate, 1> one{wn(123, 0.7)};
  EXPECT_EQ(fuse_mean_weighted(one), one[0].angle);
  EXPECT_EQ(fuse_mean_plain(one), one[0].angle);
  EXPECT_EQ(fuse_weighted(one).dispersion, one[0].dispersion);
  EXPECT_EQ(fuse_mean(one).dispersion, one[0].dispersion);
  EXPECT_EQ(fuse_variance_weighted(std::vector<double>{0.7}), 0.7);
  EXPECT_EQ(fuse_kappa_weighted(std::vector<double>{0.7}), 0.7);
  EXPECT_EQ(fuse_variance_mean(std::vector<double>{0.7}), 0.7);
  EXPECT_EQ(fuse_kappa_mean(std::vector<double>{0.7}), 0.7);
  EXPECT_EQ(fuse_circvar_stienne(std::vector<double>{0.7}), 0.7);
}

TEST(FuseWeighted, CombinesAngleAndDispersion) {
  const std::array<AngularEstimate, 2> e{wn(350, 0.3), wn(10, 0.3)};
  const AngularEstimate f = fuse_weighted(e);
  EXPECT_NEAR(f.angle.radians(), 0.0, 1e-12);
  EXPECT_EQ(f.dispersion.kind(), DispersionKind::kWnVariance);
  EXPECT_DOUBLE_EQ(f.dispersion.value(), 0.15);

  const std::array<AngularEstimate, 2> k{vm(20, 2), vm(40, 6)};
  const AngularEstimate g = fuse_weighted(k);
  EXPECT_DOUBLE_EQ(g.dispersion.value(), 8.0);
  EXPECT_GT(g.angle.degrees(), 30.0);
}

TEST(FuseMean, CombinesAngleAndDispersion) {
  const std::array<AngularEstimate, 2> e{vm(20, 1), vm(40, 3)};
  const AngularEstimate f = fuse_mean(e);
  EXPECT_NEAR(f.angle.degrees(), 30.0, 1e-12);
  EXPECT_DOUBLE_EQ(f.dispersion.value(), 3.0);
}
