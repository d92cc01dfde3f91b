#include "circfuse/t2t/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "circfuse/errors.hpp"
#include "circfuse/t2t/association.hpp"
#include "circfuse/t2t/merge.hpp"

namespace circfuse::t2t {
namespace {

struct Aligned {
  StreamKey key;
  TrackState state;
};

using Cluster = std::vector<Aligned>;

double cluster_cost(const Cluster& cluster, const Aligned& track, const TrackHistory& history,
                    bool use_heading) {
  const HistoryWindow* tw = history.find(track.key);
  double sum = 0.0;
  for (const auto& member : cluster) {
    const HistoryWindow* mw = history.find(member.key);
    std::optional<double> d;
    if (tw != nullptr && mw != nullptr) {
      d = mean_history_distance(*mw, *tw, use_heading);
    }
    sum += d ? *d : association_distance(member.state, track.state, use_heading);
  }
  return sum / static_cast<double>(cluster.size());
}

std::vector<Cluster> associate_across_sensors(const std::vector<Aligned>& tracks,
                                              const TrackHistory& history,
                                              const FusionConfig& config,
                                              std::size_t& errors) {
  std::map<int, std::vector<Aligned>> by_sensor;
  for (const auto& t : tracks) {
    by_sensor[t.key.sensor_id].push_back(t);
  }
  std::vector<Cluster> clusters;
  for (const auto& [sensor, incoming] : by_sensor) {
    const auto rows = static_cast<Eigen::Index>(clusters.size());
    const auto cols = static_cast<Eigen::Index>(incoming.size());
    Eigen::MatrixXd cost(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        try {
          cost(r, c) = cluster_cost(clusters[static_cast<std::size_t>(r)],
                                    incoming[static_cast<std::size_t>(c)], history,
                                    config.use_heading);
        } catch (const DomainError&) {
          cost(r, c) = std::numeric_limits<double>::infinity();
          ++errors;
        }
      }
    }
    const Assignment a = gnn_associate(cost, config.gate);
    for (const auto& [r, c] : a.matches) {
      clusters[r].push_back(incoming[c]);
    }
    for (const std::size_t c : a.unmatched_cols) {
      clusters.push_back({incoming[c]});
    }
  }
  return clusters;
}

FusedTrack passthrough(const Aligned& t) { return {t.state, {t.key}, {t.state}}; }

}  // namespace

void FusionConfig::validate() const {
  if (!(rate_hz > 0.0) || !std::isfinite(rate_hz)) {
    throw ContractError("FusionConfig: rate_hz must be finite and > 0");
  }
  if (!(gate > 0.0) || !std::isfinite(gate)) {
    throw ContractError("FusionConfig: gate must be finite and > 0");
  }
  if (!(cv.q >= 0.0) || !(cv.heading_inflation >= 0.0)) {
    throw ContractError("FusionConfig: process noise must be >= 0");
  }
  if (!(drop_timeout >= 0.0)) {
    throw ContractError("FusionConfig: drop_timeout must be >= 0");
  }
  if (history_depth == 0) {
    throw ContractError("FusionConfig: history_depth must be >= 1");
  }
  if (heading_kind == DispersionKind::kCircVariance) {
    throw ContractError("FusionConfig: heading_kind must be WN variance or VM kappa");
  }
}

SystemTrackConfig FusionConfig::system_config() const {
  return {gate, use_heading, cv, drop_timeout, history_depth};
}

FusionState::FusionState(const FusionConfig& config)
    : history(config.history_depth), systems(config.system_config()) {}

CycleOutput fusion_cycle(TrackBuffer& buffer, FusionState& state, double fusion_time,
                         const FusionConfig& config) {
  if (!std::isfinite(fusion_time) || (state.last_time && fusion_time <= *state.last_time)) {
    throw ContractError("fusion_cycle: fusion times must be finite and strictly increasing");
  }
  CycleOutput out;
  CycleDiagnostics& diag = out.diagnostics;
  diag.cycle = state.cycle;
  diag.fusion_time = fusion_time;

  const std::vector<SensorTrack> drained = buffer.drain(fusion_time);
  diag.drained = drained.size();
  diag.dropped_late = buffer.dropped();

  std::vector<Aligned> aligned;
  aligned.reserve(drained.size());
  for (const auto& t : drained) {
    try {
      aligned.push_back({t.key(), cv_predict(t.state, fusion_time - t.timestamp, config.cv)});
    } catch (const std::exception&) {
      ++diag.stage_errors;
    }
  }
  diag.predicted = aligned.size();

  for (const auto& t : aligned) {
    state.history.push(t.key, state.cycle, t.state);
  }
  state.history.prune(state.cycle);

  const std::vector<Cluster> clusters =
      associate_across_sensors(aligned, state.history, config, diag.stage_errors);
  diag.clusters = clusters.size();

  std::vector<FusedTrack> fused;
  fused.reserve(clusters.size());
  for (Cluster cluster : clusters) {
    std::sort(cluster.begin(), cluster.end(),
              [](const Aligned& a, const Aligned& b) { return a.key < b.key; });
    if (cluster.size() == 1) {
      fused.push_back(passthrough(cluster.front()));
      ++diag.passthrough;
      continue;
    }
    FusedTrack f;
    for (const auto& m : cluster) {
      f.sources.push_back(m.key);
      f.inputs.push_back(m.state);
    }
    try {
      f.state = merge_tracks(f.inputs);
      fused.push_back(std::move(f));
      ++diag.merged;
    } catch (const std::exception&) {
      ++diag.stage_errors;
      for (const auto& m : cluster) {
        fused.push_back(passthrough(m));
        ++diag.passthrough;
      }
    }
  }

  SystemUpdateStats stats;
  const std::vector<std::uint64_t> ids =
      state.systems.update(fused, fusion_time, state.cycle, state.history, &stats);
  diag.system_matched = stats.matched;
  diag.system_created = stats.created;
  diag.system_retired = stats.retired;
  diag.stage_errors += stats.cost_errors;
  diag.system_active = state.systems.tracks().size();

  out.tracks.reserve(fused.size());
  for (std::size_t i = 0; i < fused.size(); ++i) {
    out.tracks.push_back({ids[i], std::move(fused[i])});
  }
  std::sort(out.tracks.begin(), out.tracks.end(),
            [](const CycleTrack& a, const CycleTrack& b) { return a.system_id < b.system_id; });

  state.last_time = fusion_time;
  ++state.cycle;
  return out;
}

FusionCenter::FusionCenter(FusionConfig config, std::map<int, SensorPose> poses)
    : config_(std::move(config)), poses_(std::move(poses)),
      state_((config_.validate(), config_)) {}

void FusionCenter::ingest(const SensorTrack& track) {
  const auto it = poses_.find(track.sensor_id);
  SensorTrack aligned = it == poses_.end() ? track : spatial_align(track, it->second);
  aligned.state.heading_dispersion =
      aligned.state.heading_dispersion.converted_to(config_.heading_kind);
  buffer_.insert(aligned);
}

CycleOutput FusionCenter::run_cycle(double fusion_time) {
  return fusion_cycle(buffer_, state_, fusion_time, config_);
}

}  // namespace circfuse::t2t
