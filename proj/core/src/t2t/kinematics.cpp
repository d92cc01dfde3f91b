#include "circfuse/t2t/kinematics.hpp"

#include <cmath>

#include "circfuse/errors.hpp"

namespace circfuse::t2t {

SensorTrack spatial_align(const SensorTrack& track, const SensorPose& pose) {
  const Mat2 r = rotation(pose.orientation.radians());
  Mat4 big = Mat4::Zero();
  big.topLeftCorner<2, 2>() = r;
  big.bottomRightCorner<2, 2>() = r;

  SensorTrack out = track;
  out.state.pos = r * track.state.pos + pose.origin;
  out.state.vel = r * track.state.vel;
  out.state.heading = track.state.heading.rotated(pose.orientation.radians());
  out.state.pos_vel_cov = symmetrized(big * track.state.pos_vel_cov * big.transpose());
  return out;
}

TrackState cv_predict(const TrackState& state, double dt, const CvParams& params) {
  if (!(dt >= 0.0) || !std::isfinite(dt)) {
    throw ContractError("cv_predict: dt must be finite and >= 0");
  }
  if (dt == 0.0) {
    return state;
  }
  Mat4 f = Mat4::Identity();
  f(0, 2) = dt;
  f(1, 3) = dt;

  TrackState out = state;
  out.pos = state.pos + state.vel * dt;
  out.pos_vel_cov = symmetrized(f * state.pos_vel_cov * f.transpose());
  out.pos_vel_cov(2, 2) += params.q * dt;
  out.pos_vel_cov(3, 3) += params.q * dt;

  const double growth = params.heading_inflation * dt;
  const DispersionValue& d = state.heading_dispersion;
  switch (d.kind()) {
    case DispersionKind::kWnVariance:
      out.heading_dispersion = DispersionValue::wn_variance(d.value() + growth);
      break;
    case DispersionKind::kVmKappa:
      // Grow 1/kappa on the variance scale; kappa = 0 stays uninformative.
      out.heading_dispersion =
          DispersionValue::vm_kappa(d.value() > 0.0 ? 1.0 / (1.0 / d.value() + growth) : 0.0);
      break;
    case DispersionKind::kCircVariance:
      throw ContractError("cv_predict: tracks carry WN variance or VM concentration");
  }
  return out;
}

HeadingEstimate heading_from_velocity(const Vec2& vel, const Mat2& vel_cov) {
  const double vx = vel.x();
  const double vy = vel.y();
  const double speed_sq = vx * vx + vy * vy;
  if (speed_sq == 0.0) {
    throw UndefinedHeadingError("heading_from_velocity: zero velocity has no heading");
  }
  const double numer = vy * vy * vel_cov(0, 0) + vx * vx * vel_cov(1, 1) -
                       2.0 * vx * vy * vel_cov(0, 1);
  return {Angle(std::atan2(vy, vx)), numer / (speed_sq * speed_sq)};
}

}  // namespace circfuse::t2t
