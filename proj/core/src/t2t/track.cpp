#include "circfuse/t2t/track.hpp"

#include <algorithm>
#include <cmath>

namespace circfuse::t2t {
namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool on_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

bool segments_touch(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  const double d1 = cross(q2 - q1, p1 - q1);
  const double d2 = cross(q2 - q1, p2 - q1);
  const double d3 = cross(p2 - p1, q1 - p1);
  const double d4 = cross(p2 - p1, q2 - p1);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  return (d1 == 0 && on_segment(p1, q1, q2)) || (d2 == 0 && on_segment(p2, q1, q2)) ||
         (d3 == 0 && on_segment(q1, p1, p2)) || (d4 == 0 && on_segment(q2, p1, p2));
}

}  // namespace

Mat2 rotation(double radians) {
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  Mat2 r;
  r << c, -s, s, c;
  return r;
}

Vec2 SensorPose::to_common(const Vec2& sensor_point) const {
  return rotation(orientation.radians()) * sensor_point + origin;
}

Vec2 SensorPose::to_sensor(const Vec2& common_point) const {
  return rotation(orientation.radians()).transpose() * (common_point - origin);
}

bool SensorPose::sees(const Vec2& common_point) const {
  return point_in_polygon(fov, to_sensor(common_point));
}

std::vector<Vec2> sector_polygon(double half_angle, double range, int arc_segments) {
  std::vector<Vec2> poly;
  poly.reserve(static_cast<std::size_t>(arc_segments) + 2);
  poly.emplace_back(0.0, 0.0);
  for (int i = 0; i <= arc_segments; ++i) {
    const double a = -half_angle + 2.0 * half_angle * i / arc_segments;
    poly.emplace_back(range * std::cos(a), range * std::sin(a));
  }
  return poly;
}

bool point_in_polygon(std::span<const Vec2> polygon, const Vec2& p) {
  // Even-odd ray casting.
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = polygon[i];
    const Vec2& b = polygon[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x_cross = (b.x() - a.x()) * (p.y() - a.y()) / (b.y() - a.y()) + a.x();
      if (p.x() < x_cross) {
        inside = !inside;
      }
    }
  }
  return inside;
}

bool is_simple_polygon(std::span<const Vec2> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) {
    return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        continue;
      }
      if (segments_touch(polygon[i], polygon[(i + 1) % n], polygon[j], polygon[(j + 1) % n])) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace circfuse::t2t
