#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "circfuse/t2t/pipeline.hpp"
#include "circfuse/t2t/track.hpp"

namespace circfuse::sim {

using t2t::Vec2;

/// The object rests `dwell` seconds at `pos`, then walks straight to the
/// next waypoint at `speed`. It stays at the last waypoint.
struct Waypoint {
  Vec2 pos = Vec2::Zero();
  double dwell = 0.0;
  double speed = 0.0;
};

/// Measurement noise and tracker tuning of one simulated radar.
struct SensorNoise {
  double pos_sigma = 0.15;  // m, per axis
  double vel_sigma = 0.05;  // m/s, per axis (Doppler-grade velocity)
  double tracker_q = 0.1;   // white-acceleration psd of the sensor's CV filter
};

struct SensorSpec {
  int sensor_id = 0;
  t2t::SensorPose pose;
  SensorNoise noise;
};

struct ScenarioSpec {
  std::vector<SensorSpec> sensors;
  std::vector<Waypoint> waypoints;
  double rate_hz = 18.0;
  double duration = 8.0;
  std::uint64_t seed = 7;
  /// Heading variance growth per second while the track's velocity is
  /// exactly zero and the previous heading is held.
  double standstill_heading_inflation = 0.1;

  /// Two radars with 90 degree, 40 m sectors watching a pedestrian who
  /// stands at (-1, 1) for 2 s and then walks south-east at 1.4 m/s.
  /// Sensor 1 loses the pedestrian at (2.5, -2).
  static ScenarioSpec make_default(std::uint64_t seed = 7);

  /// Throws ContractError.
  void validate() const;
  [[nodiscard]] std::map<int, t2t::SensorPose> poses() const;
};

struct TruthSample {
  double t = 0.0;
  Vec2 pos = Vec2::Zero();
  Vec2 vel = Vec2::Zero();
};

TruthSample truth_at(const ScenarioSpec& spec, double t);

struct ScenarioData {
  std::vector<TruthSample> truth;
  /// Sensor-frame tracks, ordered by time and then sensor id.
  std::vector<t2t::SensorTrack> tracks;
};

/// Samples the truth at the scenario rate. Each sensor measures position
/// and velocity in its own frame with Gaussian noise, runs a CV Kalman
/// filter, and emits a track only while the object is inside its field of
/// view. Headings come from the filtered velocity by linearisation.
/// Deterministic per seed.
ScenarioData generate_scenario(const ScenarioSpec& spec);

/// Feeds sensor-frame tracks into a fusion center in timestamp order and
/// runs cycles at first_fusion_time + k / rate_hz until every track has been
/// drained.
std::vector<t2t::CycleOutput> run_pipeline(std::span<const t2t::SensorTrack> tracks,
                                           const std::map<int, t2t::SensorPose>& poses,
                                           const t2t::FusionConfig& config,
                                           double first_fusion_time);

struct SimulationResult {
  ScenarioData data;
  std::vector<t2t::CycleOutput> cycles;
};

/// generate_scenario followed by run_pipeline, with fusion instants placed
/// half a period after the sensor updates.
SimulationResult run_simulation(const ScenarioSpec& spec, const t2t::FusionConfig& config = {});

}  // namespace circfuse::sim
