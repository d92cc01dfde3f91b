#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "circfuse/fusion.hpp"
#include "circfuse/t2t/buffer.hpp"
#include "circfuse/t2t/history.hpp"
#include "circfuse/t2t/kinematics.hpp"
#include "circfuse/t2t/system_tracks.hpp"
#include "circfuse/t2t/track.hpp"

namespace circfuse::t2t {

struct FusionConfig {
  double rate_hz = 18.0;
  /// Shared by the cross-sensor and the system-track association stages.
  double gate = 13.8;
  bool use_heading = false;
  CvParams cv;
  double drop_timeout = 0.5;
  std::size_t history_depth = kDefaultHistoryDepth;
  /// Heading dispersion family used inside the pipeline. Inputs are
  /// converted on ingest.
  DispersionKind heading_kind = DispersionKind::kWnVariance;

  /// Throws ContractError for an unusable configuration.
  void validate() const;
  [[nodiscard]] SystemTrackConfig system_config() const;
};

struct CycleDiagnostics {
  std::uint64_t cycle = 0;
  double fusion_time = 0.0;
  std::size_t drained = 0;
  std::size_t predicted = 0;
  std::size_t dropped_late = 0;  // cumulative buffer drops
  std::size_t stage_errors = 0;
  std::size_t clusters = 0;
  std::size_t merged = 0;        // clusters fused from two or more sensors
  std::size_t passthrough = 0;   // single-sensor clusters
  std::size_t system_matched = 0;
  std::size_t system_created = 0;
  std::size_t system_retired = 0;
  std::size_t system_active = 0;
};

struct CycleTrack {
  std::uint64_t system_id = 0;
  FusedTrack fused;
};

struct CycleOutput {
  CycleDiagnostics diagnostics;
  std::vector<CycleTrack> tracks;  // sorted by system_id
};

/// Everything a fusion instance carries between cycles.
struct FusionState {
  explicit FusionState(const FusionConfig& config);

  TrackHistory history;
  SystemTrackTable systems;
  std::uint64_t cycle = 0;
  std::optional<double> last_time;
};

/// One fixed-rate cycle: drain, CV-predict to fusion_time, record history,
/// associate across sensors, merge, and update system tracks. Errors in a
/// single track are counted in the diagnostics and do not abort the cycle.
/// Fusion times must increase strictly.
CycleOutput fusion_cycle(TrackBuffer& buffer, FusionState& state, double fusion_time,
                         const FusionConfig& config);

/// Buffer, poses and cycle state bundled together. `ingest` may be called
/// from other threads while a cycle runs.
class FusionCenter {
 public:
  explicit FusionCenter(FusionConfig config, std::map<int, SensorPose> poses = {});

  /// Aligns a sensor-frame track into the common frame and buffers it.
  /// Sensors without a registered pose are taken as already aligned.
  void ingest(const SensorTrack& track);
  CycleOutput run_cycle(double fusion_time);

  [[nodiscard]] const FusionConfig& config() const { return config_; }
  [[nodiscard]] const TrackBuffer& buffer() const { return buffer_; }
  [[nodiscard]] const std::vector<SystemTrack>& system_tracks() const {
    return state_.systems.tracks();
  }

 private:
  FusionConfig config_;
  std::map<int, SensorPose> poses_;
  TrackBuffer buffer_;
  FusionState state_;
};

}  // namespace circfuse::t2t
