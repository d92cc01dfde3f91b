#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>

#include "circfuse/t2t/track.hpp"

namespace circfuse::t2t {

inline constexpr std::size_t kDefaultHistoryDepth = 6;

struct HistoryEntry {
  std::uint64_t cycle = 0;
  TrackState state;
};

using HistoryWindow = std::deque<HistoryEntry>;

/// Appends to a window kept sorted by cycle, bounded to `depth` entries.
/// Pushing a cycle that is already present replaces it.
void push_history(HistoryWindow& window, std::uint64_t cycle, const TrackState& state,
                  std::size_t depth);

/// Mean association distance over the cycles present in both windows.
/// Empty when the windows do not overlap.
std::optional<double> mean_history_distance(const HistoryWindow& a, const HistoryWindow& b,
                                            bool use_heading);

/// Per-stream windows of temporally aligned sensor tracks.
class TrackHistory {
 public:
  explicit TrackHistory(std::size_t depth = kDefaultHistoryDepth);

  void push(const StreamKey& key, std::uint64_t cycle, const TrackState& state);
  [[nodiscard]] const HistoryWindow* find(const StreamKey& key) const;
  /// Drops entries that fell out of the window ending at `current_cycle`,
  /// and streams left empty.
  void prune(std::uint64_t current_cycle);

  [[nodiscard]] std::size_t depth() const { return depth_; }
  [[nodiscard]] std::size_t stream_count() const { return windows_.size(); }

 private:
  std::size_t depth_;
  std::map<StreamKey, HistoryWindow> windows_;
};

}  // namespace circfuse::t2t
