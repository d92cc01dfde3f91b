#include "circfuse/t2t/track_io.hpp"

#include <array>
#include <cstddef>
#include <string>

#include <json.hpp>

#include "circfuse/errors.hpp"

namespace circfuse::t2t {
namespace {

using nlohmann::json;

constexpr std::array<std::array<int, 2>, 10> kUpper = {{
    {0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3},
}};

json cov_to_json(const Mat4& p) {
  json out = json::array();
  for (const auto& [r, c] : kUpper) {
    out.push_back(p(r, c));
  }
  return out;
}

Mat4 cov_from_json(const json& j) {
  if (!j.is_array() || j.size() != kUpper.size()) {
    throw IoError("cov must hold 10 numbers");
  }
  Mat4 p = Mat4::Zero();
  for (std::size_t i = 0; i < kUpper.size(); ++i) {
    const auto [r, c] = kUpper[i];
    p(r, c) = j[i].get<double>();
    p(c, r) = p(r, c);
  }
  return p;
}

json state_fields(const TrackState& s) {
  return {{"x", s.pos.x()},
          {"y", s.pos.y()},
          {"vx", s.vel.x()},
          {"vy", s.vel.y()},
          {"heading", s.heading.radians()},
          {"cov", cov_to_json(s.pos_vel_cov)},
          {"heading_var", s.heading_dispersion.as_variance()}};
}

json key_json(const StreamKey& k) { return json::array({k.sensor_id, k.track_id}); }

json vec2_json(const Vec2& v) { return json::array({v.x(), v.y()}); }

Vec2 vec2_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw IoError("expected [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string to_ldjson(const SensorTrack& track) {
  json j = {{"sensor_id", track.sensor_id}, {"track_id", track.track_id}, {"t", track.timestamp}};
  j.update(state_fields(track.state));
  return j.dump() + "\n";
}

SensorTrack parse_sensor_track(std::string_view line) {
  try {
    const json j = json::parse(line);
    SensorTrack t;
    t.sensor_id = j.at("sensor_id").get<int>();
    t.track_id = j.at("track_id").get<int>();
    t.timestamp = j.at("t").get<double>();
    t.state.pos = {j.at("x").get<double>(), j.at("y").get<double>()};
    t.state.vel = {j.at("vx").get<double>(), j.at("vy").get<double>()};
    t.state.heading = Angle(j.at("heading").get<double>());
    t.state.pos_vel_cov = cov_from_json(j.at("cov"));
    t.state.heading_dispersion = DispersionValue::wn_variance(j.at("heading_var").get<double>());
    return t;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed sensor track: ") + e.what());
  } catch (const DomainError& e) {
    throw IoError(std::string("invalid sensor track: ") + e.what());
  }
}

std::vector<SensorTrack> parse_sensor_tracks(std::string_view text) {
  std::vector<SensorTrack> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      continue;
    }
    try {
      out.push_back(parse_sensor_track(line));
    } catch (const IoError& e) {
      throw IoError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::string to_ldjson(const CycleOutput& cycle) {
  const CycleDiagnostics& d = cycle.diagnostics;
  std::string out;
  for (const auto& ct : cycle.tracks) {
    json j = {{"type", "system_track"},
              {"cycle", d.cycle},
              {"t", d.fusion_time},
              {"system_id", ct.system_id}};
    j.update(state_fields(ct.fused.state));
    json sources = json::array();
    for (std::size_t i = 0; i < ct.fused.sources.size(); ++i) {
      const TrackState& in = ct.fused.inputs[i];
      sources.push_back({{"key", key_json(ct.fused.sources[i])},
                         {"heading", in.heading.radians()},
                         {"heading_var", in.heading_dispersion.as_variance()}});
    }
    j["sources"] = std::move(sources);
    out += j.dump();
    out += '\n';
  }
  const json diag = {{"type", "diagnostics"},
                     {"cycle", d.cycle},
                     {"t", d.fusion_time},
                     {"drained", d.drained},
                     {"predicted", d.predicted},
                     {"dropped_late", d.dropped_late},
                     {"stage_errors", d.stage_errors},
                     {"clusters", d.clusters},
                     {"merged", d.merged},
                     {"passthrough", d.passthrough},
                     {"system_matched", d.system_matched},
                     {"system_created", d.system_created},
                     {"system_retired", d.system_retired},
                     {"system_active", d.system_active}};
  out += diag.dump();
  out += '\n';
  return out;
}

std::string poses_to_json(const std::map<int, SensorPose>& poses) {
  json sensors = json::array();
  for (const auto& [id, pose] : poses) {
    json fov = json::array();
    for (const auto& v : pose.fov) {
      fov.push_back(vec2_json(v));
    }
    sensors.push_back({{"sensor_id", id},
                       {"origin", vec2_json(pose.origin)},
                       {"orientation", pose.orientation.radians()},
                       {"fov", std::move(fov)}});
  }
  return json{{"sensors", std::move(sensors)}}.dump(2) + "\n";
}

std::map<int, SensorPose> parse_poses(std::string_view text) {
  try {
    const json j = json::parse(text);
    std::map<int, SensorPose> out;
    for (const auto& s : j.at("sensors")) {
      SensorPose pose;
      pose.origin = vec2_from_json(s.at("origin"));
      pose.orientation = Angle(s.at("orientation").get<double>());
      if (s.contains("fov")) {
        for (const auto& v : s.at("fov")) {
          pose.fov.push_back(vec2_from_json(v));
        }
        if (!is_simple_polygon(pose.fov)) {
          throw IoError("fov of sensor " + std::to_string(s.at("sensor_id").get<int>()) +
                        " is not a simple polygon");
        }
      }
      out[s.at("sensor_id").get<int>()] = std::move(pose);
    }
    return out;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed poses file: ") + e.what());
  } catch (const DomainError& e) {
    throw IoError(std::string("invalid poses file: ") + e.what());
  }
}

}  // namespace circfuse::t2t
