#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "circfuse/t2t/history.hpp"
#include "circfuse/t2t/kinematics.hpp"
#include "circfuse/t2t/track.hpp"

namespace circfuse::t2t {

/// Output of the merge stage for one object in one cycle.
struct FusedTrack {
  TrackState state;
  std::vector<StreamKey> sources;   // sorted
  std::vector<TrackState> inputs;   // temporally aligned source states, same order
};

struct SystemTrack {
  std::uint64_t system_id = 0;
  TrackState state;
  double last_update = 0.0;
  HistoryWindow history;
  std::vector<StreamKey> sources;
};

struct SystemTrackConfig {
  double gate = 13.8;
  bool use_heading = false;
  CvParams cv;
  double drop_timeout = 0.5;
  std::size_t history_depth = kDefaultHistoryDepth;
};

struct SystemUpdateStats {
  std::size_t matched = 0;
  std::size_t created = 0;
  std::size_t retired = 0;
  std::size_t cost_errors = 0;
};

/// Persistent identities for fused tracks.
///
/// The cost between a fused track and a system track averages the
/// association distance over the current cycle (system track predicted to
/// the fusion time) and every earlier cycle where both the system history
/// and the fused track's source histories have an entry.
class SystemTrackTable {
 public:
  explicit SystemTrackTable(SystemTrackConfig config = {});

  /// Returns the system id assigned to each fused track, in input order.
  std::vector<std::uint64_t> update(std::span<const FusedTrack> fused, double fusion_time,
                                    std::uint64_t cycle, const TrackHistory& sensor_history,
                                    SystemUpdateStats* stats = nullptr);

  [[nodiscard]] const std::vector<SystemTrack>& tracks() const { return tracks_; }
  [[nodiscard]] const SystemTrackConfig& config() const { return config_; }

 private:
  double cost(const FusedTrack& fused, const SystemTrack& system, double fusion_time,
              std::uint64_t cycle, const TrackHistory& sensor_history) const;

  SystemTrackConfig config_;
  std::vector<SystemTrack> tracks_;  // sorted by system_id
  std::uint64_t next_id_ = 1;
};

}  // namespace circfuse::t2t
