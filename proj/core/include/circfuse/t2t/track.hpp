#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "circfuse/angle.hpp"
#include "circfuse/fusion.hpp"

namespace circfuse::t2t {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

/// Kinematic state shared by sensor and system tracks.
/// Covariance is over (x, y, vx, vy).
struct TrackState {
  Vec2 pos = Vec2::Zero();
  Vec2 vel = Vec2::Zero();
  Angle heading;
  Mat4 pos_vel_cov = Mat4::Identity();
  DispersionValue heading_dispersion = DispersionValue::wn_variance(1.0);

  [[nodiscard]] Vec4 linear() const { return {pos.x(), pos.y(), vel.x(), vel.y()}; }
  [[nodiscard]] AngularEstimate heading_estimate() const { return {heading, heading_dispersion}; }
};

/// Identity of one sensor-side track stream.
struct StreamKey {
  int sensor_id = 0;
  int track_id = 0;

  friend auto operator<=>(const StreamKey&, const StreamKey&) = default;
};

struct SensorTrack {
  int sensor_id = 0;
  int track_id = 0;
  double timestamp = 0.0;
  TrackState state;

  [[nodiscard]] StreamKey key() const { return {sensor_id, track_id}; }
};

/// Mounting of a sensor in the common frame. `fov` is a simple polygon in
/// the sensor frame.
struct SensorPose {
  Vec2 origin = Vec2::Zero();
  Angle orientation;
  std::vector<Vec2> fov;

  [[nodiscard]] Vec2 to_common(const Vec2& sensor_point) const;
  [[nodiscard]] Vec2 to_sensor(const Vec2& common_point) const;
  /// True when a common-frame point lies inside the field of view.
  [[nodiscard]] bool sees(const Vec2& common_point) const;
};

/// Circular sector of `range` metres spanning +-half_angle about the sensor
/// boresight, approximated by `arc_segments` chords.
std::vector<Vec2> sector_polygon(double half_angle, double range, int arc_segments = 16);

bool point_in_polygon(std::span<const Vec2> polygon, const Vec2& p);
/// At least three vertices and no two non-adjacent edges touching.
bool is_simple_polygon(std::span<const Vec2> polygon);

Mat2 rotation(double radians);

/// (P + P^T) / 2, exactly symmetric.
inline Mat4 symmetrized(const Mat4& p) { return (0.5 * (p + p.transpose())).eval(); }

}  // namespace circfuse::t2t
