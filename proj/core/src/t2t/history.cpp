#include "circfuse/t2t/history.hpp"

#include "circfuse/errors.hpp"
#include "circfuse/t2t/association.hpp"

namespace circfuse::t2t {

void push_history(HistoryWindow& window, std::uint64_t cycle, const TrackState& state,
                  std::size_t depth) {
  if (!window.empty() && window.back().cycle == cycle) {
    window.back().state = state;
    return;
  }
  if (!window.empty() && window.back().cycle > cycle) {
    throw ContractError("push_history: cycles must not go backwards");
  }
  window.push_back({cycle, state});
  while (window.size() > depth) {
    window.pop_front();
  }
}

std::optional<double> mean_history_distance(const HistoryWindow& a, const HistoryWindow& b,
                                            bool use_heading) {
  double sum = 0.0;
  std::size_t n = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->cycle < ib->cycle) {
      ++ia;
    } else if (ib->cycle < ia->cycle) {
      ++ib;
    } else {
      sum += association_distance(ia->state, ib->state, use_heading);
      ++n;
      ++ia;
      ++ib;
    }
  }
  if (n == 0) {
    return std::nullopt;
  }
  return sum / static_cast<double>(n);
}

TrackHistory::TrackHistory(std::size_t depth) : depth_(depth) {
  if (depth == 0) {
    throw ContractError("TrackHistory: depth must be >= 1");
  }
}

void TrackHistory::push(const StreamKey& key, std::uint64_t cycle, const TrackState& state) {
  push_history(windows_[key], cycle, state, depth_);
}

const HistoryWindow* TrackHistory::find(const StreamKey& key) const {
  const auto it = windows_.find(key);
  return it == windows_.end() ? nullptr : &it->second;
}

void TrackHistory::prune(std::uint64_t current_cycle) {
  const std::uint64_t oldest = current_cycle + 1 >= depth_ ? current_cycle + 1 - depth_ : 0;
  for (auto it = windows_.begin(); it != windows_.end();) {
    auto& w = it->second;
    while (!w.empty() && w.front().cycle < oldest) {
      w.pop_front();
    }
    it = w.empty() ? windows_.erase(it) : std::next(it);
  }
}

}  // namespace circfuse::t2t
