#include <vector>

#include <gtest/gtest.h>

#include "circfuse/errors.hpp"
#include "circfuse/t2t/system_tracks.hpp"

using namespace circfuse;
using namespace circfuse::t2t;

namespace {

TrackState at(double x, double y, double vx) {
  TrackState s;
  s.pos = {x, y};
  s.vel = {vx, 0.0};
  s.pos_vel_cov = Mat4::Identity() * 0.005;
  return s;
}

FusedTrack single(const StreamKey& key, const TrackState& s) {
  return FusedTrack{s, {key}, {s}};
}

// Two objects on the x axis approaching each other at 1 m per 0.1 s cycle
// while reporting 0.9 m/s. At cycle 5 the reported positions have already
// passed each other by 0.01 m relative to the system predictions
// (-0.01 and +0.01), so the current cycle alone prefers swapping ids.
struct Crossing {
  static constexpr double kDt = 0.1;
  static constexpr int kCrossCycle = 5;

  static TrackState object_a(int k) {
    return at(k == kCrossCycle ? 0.01 : -0.5 + 0.1 * k, 0.0, 0.9);
  }
  static TrackState object_b(int k) {
    return at(k == kCrossCycle ? -0.01 : 0.5 - 0.1 * k, 0.0, -0.9);
  }

  // Returns the ids given to (a, b) at every cycle.
  static std::vector<std::pair<std::uint64_t, std::uint64_t>> run(std::size_t depth) {
    SystemTrackConfig cfg;
    cfg.history_depth = depth;
    SystemTrackTable table(cfg);
    TrackHistory history(depth);
    const StreamKey ka{1, 1};
    const StreamKey kb{1, 2};
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ids;
    for (int k = 0; k <= kCrossCycle; ++k) {
      const auto cycle = static_cast<std::uint64_t>(k);
      history.push(ka, cycle, object_a(k));
      history.push(kb, cycle, object_b(k));
      const std::vector<FusedTrack> fused{single(ka, object_a(k)), single(kb, object_b(k))};
      const auto out = table.update(fused, kDt * k, cycle, history);
      ids.emplace_back(out[0], out[1]);
    }
    return ids;
  }
};

}  // namespace

TEST(SystemTracks, FirstTrackGetsIdOne) {
  SystemTrackTable table;
  TrackHistory history;
  const std::vector<FusedTrack> fused{single({1, 1}, at(0, 0, 1))};
  SystemUpdateStats stats;
  EXPECT_EQ(table.update(fused, 0.0, 0, history, &stats), std::vector<std::uint64_t>{1});
  EXPECT_EQ(stats.created, 1U);
  ASSERT_EQ(table.tracks().size(), 1U);
  EXPECT_EQ(table.tracks()[0].history.size(), 1U);
}

TEST(SystemTracks, SmallMotionKeepsId) {
  SystemTrackTable table;
  TrackHistory history;
  for (int k = 0; k < 20; ++k) {
    const TrackState s = at(0.05 * k, 0.0, 1.0);
    history.push({1, 1}, static_cast<std::uint64_t>(k), s);
    const std::vector<FusedTrack> fused{single({1, 1}, s)};
    EXPECT_EQ(table.update(fused, 0.05 * k, static_cast<std::uint64_t>(k), history)[0], 1U);
  }
  EXPECT_LE(table.tracks()[0].history.size(), kDefaultHistoryDepth);
}

TEST(SystemTracks, CrossingKeepsIdsWithHistory) {
  const auto ids = Crossing::run(kDefaultHistoryDepth);
  for (const auto& [a, b] : ids) {
    EXPECT_EQ(a, 1U);
    EXPECT_EQ(b, 2U);
  }
}

TEST(SystemTracks, CrossingSwapsIdsWithoutHistory) {
  const auto ids = Crossing::run(1);
  for (int k = 0; k < Crossing::kCrossCycle; ++k) {
    EXPECT_EQ(ids[static_cast<std::size_t>(k)], std::make_pair(std::uint64_t{1}, std::uint64_t{2}));
  }
  EXPECT_EQ(ids.back(), std::make_pair(std::uint64_t{2}, std::uint64_t{1}));
}

TEST(SystemTracks, UnmatchedTracksRetireAfterTimeout) {
  SystemTrackConfig cfg;
  cfg.drop_timeout = 0.5;
  SystemTrackTable table(cfg);
  TrackHistory history;
  const std::vector<FusedTrack> fused{single({1, 1}, at(0, 0, 0))};
  table.update(fused, 0.0, 0, history);
  SystemUpdateStats stats;
  table.update({}, 0.5, 1, history, &stats);
  EXPECT_EQ(stats.retired, 0U);
  EXPECT_EQ(table.tracks().size(), 1U);
  table.update({}, 0.51, 2, history, &stats);
  EXPECT_EQ(stats.retired, 1U);
  EXPECT_TRUE(table.tracks().empty());

  const std::vector<FusedTrack> again{single({1, 1}, at(0, 0, 0))};
  EXPECT_EQ(table.update(again, 0.6, 3, history)[0], 2U);
}

TEST(SystemTracks, CostErrorsAreCounted) {
  SystemTrackTable table;
  TrackHistory history;
  TrackState bad = at(0, 0, 0);
  bad.pos_vel_cov = Mat4::Zero();
  table.update(std::vector<FusedTrack>{single({1, 1}, bad)}, 0.0, 0, history);
  SystemUpdateStats stats;
  const auto ids = table.update(std::vector<FusedTrack>{single({1, 1}, bad)}, 0.05, 1, history,
                                &stats);
  EXPECT_EQ(stats.cost_errors, 1U);
  EXPECT_EQ(stats.created, 1U);
  EXPECT_EQ(ids[0], 2U);
}

TEST(SystemTracks, InvalidConfig) {
  SystemTrackConfig cfg;
  cfg.history_depth = 0;
  EXPECT_THROW(SystemTrackTable{cfg}, ContractError);
  cfg = {};
  cfg.drop_timeout = -1.0;
  EXPECT_THROW(SystemTrackTable{cfg}, ContractError);
}
