#include "circfuse/angle.hpp"

#include <cmath>

#include "circfuse/errors.hpp"

namespace circfuse {

double wrap_angle(double radians) {
  if (!std::isfinite(radians)) {
    throw DomainError("wrap_angle: angle must be finite");
  }
  // std::remainder is exact and lands in [-pi, pi].
  double r = std::remainder(radians, kTwoPi);
  if (r <= -kPi) {
    r += kTwoPi;
  }
  return r;
}

double circ_distance(Angle theta, Angle alpha) {
  const double half = 0.5 * (theta.radians() - alpha.radians());
  const double d = 2.0 * std::atan(std::tan(half));
  // atan saturates at +-pi/2, so d is in [-pi, pi]; fold -pi onto pi.
  return d <= -kPi ? kPi : d;
}

}  // namespace circfuse
