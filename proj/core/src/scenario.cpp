#include "circfuse/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/Cholesky>

#include "circfuse/errors.hpp"
#include "circfuse/rng.hpp"
#include "circfuse/t2t/kinematics.hpp"

namespace circfuse::sim {
namespace {

using t2t::Mat2;
using t2t::Mat4;
using t2t::Vec4;

constexpr double kHeadingVarianceFloor = 1e-12;
constexpr double kUniformHeadingVariance = kPi * kPi / 3.0;

class CvFilter {
 public:
  CvFilter(const SensorNoise& noise) : q_(noise.tracker_q) {
    const double pv = noise.pos_sigma * noise.pos_sigma;
    const double vv = noise.vel_sigma * noise.vel_sigma;
    r_ = Vec4(pv, pv, vv, vv).asDiagonal();
    exact_ = pv == 0.0 && vv == 0.0;
  }

  void init(const Vec4& z) {
    x_ = z;
    p_ = r_;
  }

  void step(const Vec4& z, double dt) {
    Mat4 f = Mat4::Identity();
    f(0, 2) = dt;
    f(1, 3) = dt;
    Mat4 q = Mat4::Zero();
    const double a = q_ * dt * dt * dt / 3.0;
    const double b = q_ * dt * dt / 2.0;
    const double c = q_ * dt;
    q(0, 0) = q(1, 1) = a;
    q(0, 2) = q(2, 0) = q(1, 3) = q(3, 1) = b;
    q(2, 2) = q(3, 3) = c;
    x_ = f * x_;
    p_ = f * p_ * f.transpose() + q;
    if (exact_) {
      x_ = z;
      p_.setZero();
      return;
    }
    const Mat4 s = p_ + r_;
    const Mat4 k = s.ldlt().solve(p_).transpose();
    x_ += k * (z - x_);
    p_ = (Mat4::Identity() - k) * p_;
    p_ = t2t::symmetrized(p_);
  }

  [[nodiscard]] const Vec4& x() const { return x_; }
  [[nodiscard]] const Mat4& p() const { return p_; }

 private:
  double q_;
  Mat4 r_;
  bool exact_ = false;
  Vec4 x_ = Vec4::Zero();
  Mat4 p_ = Mat4::Zero();
};

std::vector<t2t::SensorTrack> sensor_stream(const ScenarioSpec& spec, std::size_t index,
                                            const std::vector<TruthSample>& truth) {
  const SensorSpec& sensor = spec.sensors[index];
  CounterRng rng(derive_seed(spec.seed, index));
  CvFilter filter(sensor.noise);
  const Mat2 to_sensor = t2t::rotation(sensor.pose.orientation.radians()).transpose();
  const double dt = 1.0 / spec.rate_hz;

  std::vector<t2t::SensorTrack> out;
  bool tracking = false;
  int track_id = 0;
  std::optional<Angle> last_heading;
  double last_variance = 0.0;
  for (const auto& sample : truth) {
    Vec4 noise;
    noise << sensor.noise.pos_sigma * rng.normal(), sensor.noise.pos_sigma * rng.normal(),
        sensor.noise.vel_sigma * rng.normal(), sensor.noise.vel_sigma * rng.normal();
    if (!sensor.pose.sees(sample.pos)) {
      tracking = false;
      continue;
    }
    Vec4 z;
    z << sensor.pose.to_sensor(sample.pos), to_sensor * sample.vel;
    z += noise;
    if (tracking) {
      filter.step(z, dt);
    } else {
      filter.init(z);
      tracking = true;
      ++track_id;
      last_heading.reset();
    }

    t2t::SensorTrack track;
    track.sensor_id = sensor.sensor_id;
    track.track_id = track_id;
    track.timestamp = sample.t;
    track.state.pos = filter.x().head<2>();
    track.state.vel = filter.x().tail<2>();
    track.state.pos_vel_cov = filter.p();

    Angle heading;
    double variance = 0.0;
    try {
      const t2t::HeadingEstimate h =
          t2t::heading_from_velocity(track.state.vel, filter.p().bottomRightCorner<2, 2>());
      heading = h.heading;
      variance = h.variance;
      if (!std::isfinite(variance)) {
        throw UndefinedHeadingError("non-finite heading variance");
      }
    } catch (const UndefinedHeadingError&) {
      heading = last_heading.value_or(Angle{});
      variance = last_heading ? last_variance + spec.standstill_heading_inflation * dt
                              : kUniformHeadingVariance;
    }
    variance = std::max(variance, kHeadingVarianceFloor);
    last_heading = heading;
    last_variance = variance;
    track.state.heading = heading;
    track.state.heading_dispersion = DispersionValue::wn_variance(variance);
    out.push_back(track);
  }
  return out;
}

}  // namespace

ScenarioSpec ScenarioSpec::make_default(std::uint64_t seed) {
  ScenarioSpec spec;
  spec.seed = seed;
  const double half = kPi / 4.0;
  const std::vector<Vec2> sector = t2t::sector_polygon(half, 40.0);

  const Vec2 s1(-8.2, 15.8);
  const Vec2 exit_point(2.5, -2.0);
  const Vec2 to_exit = exit_point - s1;
  SensorSpec radar1;
  radar1.sensor_id = 1;
  radar1.pose = {s1, Angle(std::atan2(to_exit.y(), to_exit.x()) - half), sector};

  SensorSpec radar2;
  radar2.sensor_id = 2;
  radar2.pose = {Vec2(-18.2, -2.8), Angle::from_degrees(5.0), sector};

  spec.sensors = {radar1, radar2};
  spec.waypoints = {
      {Vec2(-1.0, 1.0), 2.0, 1.4},
      {exit_point, 0.0, 1.4},
      {Vec2(6.0, -5.0), 0.0, 0.0},
  };
  return spec;
}

void ScenarioSpec::validate() const {
  if (!(rate_hz > 0.0) || !std::isfinite(rate_hz)) {
    throw ContractError("ScenarioSpec: rate_hz must be finite and > 0");
  }
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw ContractError("ScenarioSpec: duration must be finite and > 0");
  }
  if (waypoints.empty()) {
    throw ContractError("ScenarioSpec: at least one waypoint is required");
  }
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
    if (!(waypoints[i].dwell >= 0.0) || !(waypoints[i].speed > 0.0)) {
      throw ContractError("ScenarioSpec: waypoints need dwell >= 0 and speed > 0");
    }
  }
  for (const auto& s : sensors) {
    if (!(s.noise.pos_sigma >= 0.0) || !(s.noise.vel_sigma >= 0.0) ||
        !(s.noise.tracker_q >= 0.0)) {
      throw ContractError("ScenarioSpec: noise parameters must be >= 0");
    }
    if (!t2t::is_simple_polygon(s.pose.fov)) {
      throw ContractError("ScenarioSpec: field of view must be a simple polygon");
    }
  }
}

std::map<int, t2t::SensorPose> ScenarioSpec::poses() const {
  std::map<int, t2t::SensorPose> out;
  for (const auto& s : sensors) {
    out[s.sensor_id] = s.pose;
  }
  return out;
}

TruthSample truth_at(const ScenarioSpec& spec, double t) {
  const auto& w = spec.waypoints;
  double t0 = 0.0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (t < t0 + w[i].dwell) {
      return {t, w[i].pos, Vec2::Zero()};
    }
    t0 += w[i].dwell;
    const Vec2 leg = w[i + 1].pos - w[i].pos;
    const double length = leg.norm();
    const double travel = length / w[i].speed;
    if (t < t0 + travel) {
      const Vec2 dir = leg / length;
      return {t, w[i].pos + dir * (w[i].speed * (t - t0)), dir * w[i].speed};
    }
    t0 += travel;
  }
  return {t, w.back().pos, Vec2::Zero()};
}

ScenarioData generate_scenario(const ScenarioSpec& spec) {
  spec.validate();
  ScenarioData data;
  const auto steps = static_cast<std::size_t>(std::floor(spec.duration * spec.rate_hz + 1e-9));
  data.truth.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    data.truth.push_back(truth_at(spec, static_cast<double>(k) / spec.rate_hz));
  }
  for (std::size_t i = 0; i < spec.sensors.size(); ++i) {
    auto stream = sensor_stream(spec, i, data.truth);
    data.tracks.insert(data.tracks.end(), stream.begin(), stream.end());
  }
  std::stable_sort(data.tracks.begin(), data.tracks.end(),
                   [](const t2t::SensorTrack& a, const t2t::SensorTrack& b) {
                     return a.timestamp < b.timestamp ||
                            (a.timestamp == b.timestamp && a.key() < b.key());
                   });
  return data;
}

std::vector<t2t::CycleOutput> run_pipeline(std::span<const t2t::SensorTrack> tracks,
                                           const std::map<int, t2t::SensorPose>& poses,
                                           const t2t::FusionConfig& config,
                                           double first_fusion_time) {
  std::vector<t2t::SensorTrack> ordered(tracks.begin(), tracks.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const t2t::SensorTrack& a, const t2t::SensorTrack& b) {
                     return a.timestamp < b.timestamp;
                   });
  t2t::FusionCenter center(config, poses);
  std::vector<t2t::CycleOutput> cycles;
  if (ordered.empty()) {
    return cycles;
  }
  const double last = ordered.back().timestamp;
  std::size_t next = 0;
  for (std::size_t k = 0;; ++k) {
    const double t = first_fusion_time + static_cast<double>(k) / config.rate_hz;
    while (next < ordered.size() && ordered[next].timestamp <= t) {
      center.ingest(ordered[next++]);
    }
    cycles.push_back(center.run_cycle(t));
    if (t >= last) {
      break;
    }
  }
  return cycles;
}

SimulationResult run_simulation(const ScenarioSpec& spec, const t2t::FusionConfig& config) {
  SimulationResult result;
  result.data = generate_scenario(spec);
  result.cycles =
      run_pipeline(result.data.tracks, spec.poses(), config, 0.5 / config.rate_hz);
  return result;
}

}  // namespace circfuse::sim
