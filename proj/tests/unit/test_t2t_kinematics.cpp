#include <cmath>

#include <gtest/gtest.h>

#include "circfuse/errors.hpp"
#include "circfuse/t2t/kinematics.hpp"

using namespace circfuse;
using namespace circfuse::t2t;

namespace {

SensorTrack sample_track() {
  SensorTrack t;
  t.sensor_id = 3;
  t.track_id = 9;
  t.timestamp = 1.25;
  t.state.pos = {2.0, -1.0};
  t.state.vel = {0.5, 0.25};
  t.state.heading = Angle::from_degrees(10.0);
  t.state.pos_vel_cov = Vec4(0.4, 0.1, 0.03, 0.02).asDiagonal();
  t.state.heading_dispersion = DispersionValue::wn_variance(0.2);
  return t;
}

}  // namespace

TEST(SpatialAlign, IdentityPoseLeavesTrackUnchanged) {
  const SensorTrack t = sample_track();
  const SensorTrack a = spatial_align(t, SensorPose{});
  EXPECT_EQ(a.state.pos, t.state.pos);
  EXPECT_EQ(a.state.vel, t.state.vel);
  EXPECT_EQ(a.state.heading, t.state.heading);
  EXPECT_EQ(a.state.pos_vel_cov, t.state.pos_vel_cov);
  EXPECT_EQ(a.state.heading_dispersion, t.state.heading_dispersion);
  EXPECT_EQ(a.timestamp, t.timestamp);
  EXPECT_EQ(a.key(), t.key());
}

TEST(SpatialAlign, QuarterTurnRotatesHeading) {
  SensorPose pose;
  pose.orientation = Angle::from_degrees(90.0);
  const SensorTrack a = spatial_align(sample_track(), pose);
  EXPECT_NEAR(a.state.heading.degrees(), 100.0, 1e-12);
  EXPECT_EQ(a.state.heading_dispersion, DispersionValue::wn_variance(0.2));
}

TEST(SpatialAlign, QuarterTurnSwapsCovarianceAxes) {
  SensorPose pose;
  pose.orientation = Angle::from_degrees(90.0);
  const SensorTrack a = spatial_align(sample_track(), pose);
  EXPECT_NEAR(a.state.pos_vel_cov(0, 0), 0.1, 1e-15);
  EXPECT_NEAR(a.state.pos_vel_cov(1, 1), 0.4, 1e-15);
  EXPECT_NEAR(a.state.pos_vel_cov(2, 2), 0.02, 1e-15);
  EXPECT_NEAR(a.state.pos_vel_cov(3, 3), 0.03, 1e-15);
  EXPECT_NEAR(a.state.pos_vel_cov(0, 1), 0.0, 1e-15);
}

TEST(SpatialAlign, RotatesThenTranslates) {
  SensorPose pose;
  pose.origin = {10.0, 20.0};
  pose.orientation = Angle::from_degrees(90.0);
  const SensorTrack a = spatial_align(sample_track(), pose);
  EXPECT_NEAR(a.state.pos.x(), 11.0, 1e-12);
  EXPECT_NEAR(a.state.pos.y(), 22.0, 1e-12);
  EXPECT_NEAR(a.state.vel.x(), -0.25, 1e-15);
  EXPECT_NEAR(a.state.vel.y(), 0.5, 1e-15);
  EXPECT_EQ(a.state.pos_vel_cov, a.state.pos_vel_cov.transpose());
}

TEST(CvPredict, MovesPositionByVelocity) {
  TrackState s;
  s.vel = {1.0, 2.0};
  const TrackState p = cv_predict(s, 1.0);
  EXPECT_DOUBLE_EQ(p.pos.x(), 1.0);
  EXPECT_DOUBLE_EQ(p.pos.y(), 2.0);
  EXPECT_EQ(p.vel, s.vel);
  EXPECT_EQ(p.heading, s.heading);
}

TEST(CvPredict, ZeroStepIsIdentity) {
  const TrackState s = sample_track().state;
  const TrackState p = cv_predict(s, 0.0);
  EXPECT_EQ(p.pos, s.pos);
  EXPECT_EQ(p.pos_vel_cov, s.pos_vel_cov);
  EXPECT_EQ(p.heading_dispersion, s.heading_dispersion);
}

TEST(CvPredict, ProcessNoiseOnVelocity) {
  const TrackState s = sample_track().state;
  const TrackState p = cv_predict(s, 1.0, CvParams{0.1, 0.0});
  EXPECT_NEAR(p.pos_vel_cov(2, 2) - s.pos_vel_cov(2, 2), 0.1, 1e-15);
  EXPECT_NEAR(p.pos_vel_cov(3, 3) - s.pos_vel_cov(3, 3), 0.1, 1e-15);
  // F P F^T on the position block: P_xx + dt^2 P_vxvx.
  EXPECT_NEAR(p.pos_vel_cov(0, 0), 0.4 + 0.03, 1e-15);
  EXPECT_NEAR(p.pos_vel_cov(0, 2), 0.03, 1e-15);
  EXPECT_EQ(p.heading_dispersion, s.heading_dispersion);
}

TEST(CvPredict, HeadingHeldAndInflated) {
  TrackState s = sample_track().state;
  const TrackState p = cv_predict(s, 0.5, CvParams{0.5, 0.1});
  EXPECT_EQ(p.heading, s.heading);
  EXPECT_NEAR(p.heading_dispersion.value(), 0.2 + 0.05, 1e-15);

  s.heading_dispersion = DispersionValue::vm_kappa(4.0);
  const TrackState q = cv_predict(s, 0.5, CvParams{0.5, 0.1});
  EXPECT_NEAR(1.0 / q.heading_dispersion.value(), 0.25 + 0.05, 1e-15);

  s.heading_dispersion = DispersionValue::vm_kappa(0.0);
  EXPECT_EQ(cv_predict(s, 0.5).heading_dispersion.value(), 0.0);
}

TEST(CvPredict, Errors) {
  TrackState s;
  EXPECT_THROW(cv_predict(s, -0.01), ContractError);
  EXPECT_THROW(cv_predict(s, NAN), ContractError);
  s.heading_dispersion = DispersionValue::circ_variance(0.3);
  EXPECT_THROW(cv_predict(s, 0.1), ContractError);
}

TEST(HeadingFromVelocity, JacobianReductions) {
  const Mat2 cov = Vec2(0.3, 0.7).asDiagonal();
  const auto a = heading_from_velocity({1.0, 0.0}, cov);
  EXPECT_EQ(a.heading.radians(), 0.0);
  EXPECT_NEAR(a.variance, 0.7, 1e-15);
  const auto b = heading_from_velocity({0.0, 2.0}, cov);
  EXPECT_NEAR(b.heading.degrees(), 90.0, 1e-12);
  EXPECT_NEAR(b.variance, 0.3 / 4.0, 1e-15);
}

TEST(HeadingFromVelocity, CorrelatedCovariance) {
  Mat2 cov;
  cov << 0.2, 0.05, 0.05, 0.1;
  const Vec2 v(1.0, 1.0);
  const auto h = heading_from_velocity(v, cov);
  EXPECT_NEAR(h.heading.degrees(), 45.0, 1e-12);
  // Gradient of atan2(vy, vx): (-vy, vx) / |v|^2.
  const Vec2 g = Vec2(-v.y(), v.x()) / v.squaredNorm();
  EXPECT_NEAR(h.variance, g.dot(cov * g), 1e-15);
}

TEST(HeadingFromVelocity, VarianceDivergesNearStandstill) {
  const Mat2 cov = Mat2::Identity() * 0.01;
  double prev = 0.0;
  for (double speed : {1.0, 0.1, 0.01, 1e-3}) {
    const double v = heading_from_velocity({speed, 0.0}, cov).variance;
    EXPECT_GT(v, prev);
    prev = v;
  }
  EXPECT_GT(prev, 1e3);
  EXPECT_THROW(heading_from_velocity({0.0, 0.0}, cov), UndefinedHeadingError);
}

TEST(SensorPoseGeometry, SectorAndVisibility) {
  SensorPose pose;
  pose.origin = {1.0, 1.0};
  pose.orientation = Angle::from_degrees(90.0);
  pose.fov = sector_polygon(kPi / 4.0, 10.0);
  EXPECT_TRUE(is_simple_polygon(pose.fov));
  EXPECT_TRUE(pose.sees({1.0, 6.0}));
  EXPECT_FALSE(pose.sees({1.0, -6.0}));
  EXPECT_FALSE(pose.sees({1.0, 12.0}));
  EXPECT_FALSE(pose.sees({6.0, 2.0}));
  const Vec2 p(3.0, 4.0);
  EXPECT_NEAR((pose.to_common(pose.to_sensor(p)) - p).norm(), 0.0, 1e-14);
}

TEST(PolygonChecks, SimpleAndSelfIntersecting) {
  const std::vector<Vec2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const std::vector<Vec2> bowtie{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  const std::vector<Vec2> line{{0, 0}, {1, 0}};
  EXPECT_TRUE(is_simple_polygon(square));
  EXPECT_FALSE(is_simple_polygon(bowtie));
  EXPECT_FALSE(is_simple_polygon(line));
  EXPECT_TRUE(point_in_polygon(square, {0.5, 0.5}));
  EXPECT_FALSE(point_in_polygon(square, {1.5, 0.5}));
}
