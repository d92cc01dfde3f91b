#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "circfuse/t2t/track.hpp"

namespace circfuse::t2t {

/// Out-of-sequence buffer between sensor ingestion and the fixed-rate
/// fusion cycle. Insert and drain are linearizable and may be called from
/// different threads.
class TrackBuffer {
 public:
  void insert(const SensorTrack& track);

  /// Per stream, returns the newest track with timestamp <= fusion_time and
  /// evicts it together with everything older. Output is sorted by stream
  /// key. Later inserts older than fusion_time are dropped and counted.
  std::vector<SensorTrack> drain(double fusion_time);

  [[nodiscard]] std::size_t dropped() const;
  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] std::optional<double> last_drain_time() const;

 private:
  mutable std::mutex mutex_;
  std::map<StreamKey, std::multimap<double, SensorTrack>> pending_;
  std::optional<double> last_drain_;
  std::size_t dropped_ = 0;
};

}  // namespace circfuse::t2t
