#pragma once

#include "circfuse/t2t/track.hpp"

namespace circfuse::t2t {

/// Constant-velocity prediction parameters.
struct CvParams {
  /// Velocity process noise added per second of prediction [m^2/s^3].
  double q = 0.5;
  /// Heading dispersion growth per predicted second (rad^2/s on the variance
  /// scale). The CV model has no yaw dynamics, so the heading itself is held.
  double heading_inflation = 0.1;
};

/// Rotates and translates a sensor-frame track into the common frame.
/// Covariance is rotated by the same rotation; heading dispersion is kept.
SensorTrack spatial_align(const SensorTrack& track, const SensorPose& pose);

/// CV prediction over dt >= 0: pos += vel * dt, P = F P F^T + q dt on the
/// velocity block, heading variance += heading_inflation * dt.
/// Throws ContractError for negative dt.
TrackState cv_predict(const TrackState& state, double dt, const CvParams& params = {});

struct HeadingEstimate {
  Angle heading;
  double variance = 0.0;  // rad^2, first-order propagation of vel_cov
};

/// Heading of a velocity vector and its linearised variance
/// (vy^2 sxx + vx^2 syy - 2 vx vy sxy) / |v|^4.
/// Throws UndefinedHeadingError when |v| = 0.
HeadingEstimate heading_from_velocity(const Vec2& vel, const Mat2& vel_cov);

}  // namespace circfuse::t2t
