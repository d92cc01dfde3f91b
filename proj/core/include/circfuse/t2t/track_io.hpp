#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "circfuse/t2t/pipeline.hpp"
#include "circfuse/t2t/track.hpp"

namespace circfuse::t2t {

// Line-delimited JSON. A sensor track line carries
//   sensor_id, track_id, t, x, y, vx, vy, heading, cov, heading_var
// with angles in radians and `cov` the row-major upper triangle of the
// (x, y, vx, vy) covariance (10 numbers). Headings are read as WN variance.

std::string to_ldjson(const SensorTrack& track);
/// Throws IoError with the offending line number on malformed input.
SensorTrack parse_sensor_track(std::string_view line);
/// Blank lines are skipped.
std::vector<SensorTrack> parse_sensor_tracks(std::string_view text);

/// One "system_track" line per fused track followed by one "diagnostics"
/// line for the cycle.
std::string to_ldjson(const CycleOutput& cycle);

/// {"sensors": [{"sensor_id", "origin": [x, y], "orientation", "fov": [[x, y], ...]}]}
std::string poses_to_json(const std::map<int, SensorPose>& poses);
std::map<int, SensorPose> parse_poses(std::string_view text);

}  // namespace circfuse::t2t
