#include "circfuse/t2t/system_tracks.hpp"

#include <algorithm>
#include <limits>

#include "circfuse/errors.hpp"
#include "circfuse/t2t/association.hpp"

namespace circfuse::t2t {

SystemTrackTable::SystemTrackTable(SystemTrackConfig config) : config_(config) {
  if (!(config_.drop_timeout >= 0.0)) {
    throw ContractError("SystemTrackTable: drop_timeout must be >= 0");
  }
  if (config_.history_depth == 0) {
    throw ContractError("SystemTrackTable: history_depth must be >= 1");
  }
}

double SystemTrackTable::cost(const FusedTrack& fused, const SystemTrack& system,
                              double fusion_time, std::uint64_t cycle,
                              const TrackHistory& sensor_history) const {
  const double dt = std::max(0.0, fusion_time - system.last_update);
  double sum = association_distance(fused.state, cv_predict(system.state, dt, config_.cv),
                                    config_.use_heading);
  std::size_t n = 1;
  for (const auto& past : system.history) {
    if (past.cycle >= cycle) {
      continue;
    }
    double cycle_sum = 0.0;
    std::size_t cycle_n = 0;
    for (const auto& key : fused.sources) {
      const HistoryWindow* window = sensor_history.find(key);
      if (window == nullptr) {
        continue;
      }
      const auto it = std::find_if(window->begin(), window->end(),
                                   [&](const HistoryEntry& e) { return e.cycle == past.cycle; });
      if (it == window->end()) {
        continue;
      }
      cycle_sum += association_distance(it->state, past.state, config_.use_heading);
      ++cycle_n;
    }
    if (cycle_n > 0) {
      sum += cycle_sum / static_cast<double>(cycle_n);
      ++n;
    }
  }
  return sum / static_cast<double>(n);
}

std::vector<std::uint64_t> SystemTrackTable::update(std::span<const FusedTrack> fused,
                                                    double fusion_time, std::uint64_t cycle,
                                                    const TrackHistory& sensor_history,
                                                    SystemUpdateStats* stats) {
  SystemUpdateStats local;
  const auto rows = static_cast<Eigen::Index>(fused.size());
  const auto cols = static_cast<Eigen::Index>(tracks_.size());
  Eigen::MatrixXd c(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index s = 0; s < cols; ++s) {
      try {
        c(r, s) = cost(fused[static_cast<std::size_t>(r)], tracks_[static_cast<std::size_t>(s)],
                       fusion_time, cycle, sensor_history);
      } catch (const DomainError&) {
        c(r, s) = std::numeric_limits<double>::infinity();
        ++local.cost_errors;
      }
    }
  }
  const Assignment assignment = gnn_associate(c, config_.gate);

  std::vector<std::uint64_t> ids(fused.size(), 0);
  std::vector<char> matched(tracks_.size(), 0);
  for (const auto& [r, s] : assignment.matches) {
    SystemTrack& sys = tracks_[s];
    sys.state = fused[r].state;
    sys.last_update = fusion_time;
    sys.sources = fused[r].sources;
    push_history(sys.history, cycle, sys.state, config_.history_depth);
    ids[r] = sys.system_id;
    matched[s] = 1;
    ++local.matched;
  }

  std::vector<SystemTrack> kept;
  kept.reserve(tracks_.size() + assignment.unmatched_rows.size());
  for (std::size_t s = 0; s < tracks_.size(); ++s) {
    if (matched[s] || fusion_time - tracks_[s].last_update <= config_.drop_timeout) {
      kept.push_back(std::move(tracks_[s]));
    } else {
      ++local.retired;
    }
  }
  for (const std::size_t r : assignment.unmatched_rows) {
    SystemTrack sys;
    sys.system_id = next_id_++;
    sys.state = fused[r].state;
    sys.last_update = fusion_time;
    sys.sources = fused[r].sources;
    push_history(sys.history, cycle, sys.state, config_.history_depth);
    ids[r] = sys.system_id;
    kept.push_back(std::move(sys));
    ++local.created;
  }
  tracks_ = std::move(kept);
  if (stats != nullptr) {
    *stats = local;
  }
  return ids;
}

}  // namespace circfuse::t2t
