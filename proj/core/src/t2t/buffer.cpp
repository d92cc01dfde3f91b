#include "circfuse/t2t/buffer.hpp"

#include <cmath>

#include "circfuse/errors.hpp"

namespace circfuse::t2t {

void TrackBuffer::insert(const SensorTrack& track) {
  if (!std::isfinite(track.timestamp)) {
    throw ContractError("TrackBuffer::insert: timestamp must be finite");
  }
  const std::scoped_lock lock(mutex_);
  if (last_drain_ && track.timestamp < *last_drain_) {
    ++dropped_;
    return;
  }
  pending_[track.key()].emplace(track.timestamp, track);
}

std::vector<SensorTrack> TrackBuffer::drain(double fusion_time) {
  const std::scoped_lock lock(mutex_);
  std::vector<SensorTrack> out;
  for (auto it = pending_.begin(); it != pending_.end();) {
    auto& queue = it->second;
    const auto end = queue.upper_bound(fusion_time);
    if (end != queue.begin()) {
      out.push_back(std::prev(end)->second);
      queue.erase(queue.begin(), end);
    }
    it = queue.empty() ? pending_.erase(it) : std::next(it);
  }
  if (!last_drain_ || fusion_time > *last_drain_) {
    last_drain_ = fusion_time;
  }
  return out;
}

std::size_t TrackBuffer::dropped() const {
  const std::scoped_lock lock(mutex_);
  return dropped_;
}

std::size_t TrackBuffer::size() const {
  const std::scoped_lock lock(mutex_);
  std::size_t n = 0;
  for (const auto& [key, queue] : pending_) {
    n += queue.size();
  }
  return n;
}

std::optional<double> TrackBuffer::last_drain_time() const {
  const std::scoped_lock lock(mutex_);
  return last_drain_;
}

}  // namespace circfuse::t2t
