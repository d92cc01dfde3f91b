#pragma once

#include <numbers>

namespace circfuse {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Maps any finite angle in radians onto (-pi, pi]. -pi maps to +pi.
/// Throws DomainError for NaN or infinite input.
double wrap_angle(double radians);

/// An orientation on the circle, always stored in canonical form (-pi, pi].
class Angle {
 public:
  constexpr Angle() = default;
  explicit Angle(double radians) : value_(wrap_angle(radians)) {}

  static Angle from_degrees(double degrees) {
    return Angle(degrees * (kPi / 180.0));
  }

  [[nodiscard]] constexpr double radians() const { return value_; }
  [[nodiscard]] constexpr double degrees() const { return value_ * (180.0 / kPi); }

  /// Rotation by `delta` radians, re-wrapped.
  [[nodiscard]] Angle rotated(double delta) const { return Angle(value_ + delta); }

  friend constexpr bool operator==(Angle, Angle) = default;

 private:
  double value_ = 0.0;
};

/// Signed shorter-arc distance from `alpha` to `theta`, in (-pi, pi].
///
/// Evaluates 2*atan(tan((theta - alpha)/2)); the half-angle tangent is
/// pi-periodic, which folds every representative of the difference onto the
/// shortest arc. The exact half-turn case (tan overflows to +-inf) is
/// reported as +pi.
double circ_distance(Angle theta, Angle alpha);

}  // namespace circfuse
