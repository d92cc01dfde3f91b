#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <map>
#include <vector>

#include "circfuse/errors.hpp"
#include "circfuse/io.hpp"
#include "circfuse/scenario.hpp"
#include "circfuse/t2t/track_io.hpp"

namespace circfuse::cli {
namespace {

void write_csv(const std::string& out, const std::vector<ExperimentResult>& rows) {
  const auto path = output_path(out);
  write_file_atomic(path, to_csv(rows));
  std::size_t failed = 0;
  for (const auto& r : rows) {
    failed += r.status == RowStatus::kFailed ? 1 : 0;
  }
  std::cerr << "wrote " << rows.size() << " rows (" << failed << " failed) to " << path.string()
            << "\n";
}

std::string cycles_ldjson(const std::vector<t2t::CycleOutput>& cycles) {
  std::string text;
  for (const auto& c : cycles) {
    text += t2t::to_ldjson(c);
  }
  return text;
}

}  // namespace

std::filesystem::path output_path(const std::string& arg) {
  std::filesystem::path p(arg);
  const char* dir = std::getenv("CIRCFUSE_OUTPUT_DIR");
  if (dir != nullptr && *dir != '\0' && p.is_relative()) {
    return std::filesystem::path(dir) / p;
  }
  return p;
}

void run_mc_variance(const VarianceOptions& opts) {
  const auto grid = log_grid(opts.mc.grid.lo, opts.mc.grid.hi, opts.mc.grid.points);
  const auto rows = run_variance_experiment(opts.family, grid, opts.mc.trials, opts.mc.seed,
                                            opts.estimator, {opts.mc.threads});
  write_csv(opts.mc.out, rows);
}

void run_mc_fusion(const FusionOptions& opts) {
  SweepConfig cfg;
  cfg.family = opts.family;
  cfg.fixed_dispersion = opts.family == Family::kWrappedNormal ? opts.sigma1 : opts.kappa1;
  cfg.grid = log_grid(opts.mc.grid.lo, opts.mc.grid.hi, opts.mc.grid.points);
  cfg.trials = opts.mc.trials;
  cfg.seed = opts.mc.seed;
  write_csv(opts.mc.out, run_fusion_experiment(cfg, opts.rule, {opts.mc.threads}));
}

void run_mc_stienne(const StienneOptions& opts) {
  SweepConfig cfg;
  cfg.family = Family::kVonMises;
  cfg.fixed_dispersion = opts.kappa1;
  cfg.grid = log_grid(opts.mc.grid.lo, opts.mc.grid.hi, opts.mc.grid.points);
  cfg.trials = opts.mc.trials;
  cfg.seed = opts.mc.seed;
  write_csv(opts.mc.out, run_stienne_experiment(cfg, {opts.mc.threads}));
}

void run_t2t_sim(const SimOptions& opts) {
  const auto spec = sim::ScenarioSpec::make_default(opts.seed);
  const auto result = sim::run_simulation(spec, opts.fusion);
  write_file_atomic(output_path(opts.out), cycles_ldjson(result.cycles));
  if (!opts.sensor_out.empty()) {
    std::string text;
    for (const auto& t : result.data.tracks) {
      text += t2t::to_ldjson(t);
    }
    write_file_atomic(output_path(opts.sensor_out), text);
  }
  if (!opts.poses_out.empty()) {
    write_file_atomic(output_path(opts.poses_out), t2t::poses_to_json(spec.poses()));
  }
  std::cerr << "simulated " << result.data.tracks.size() << " sensor tracks, "
            << result.cycles.size() << " fusion cycles\n";
}

void run_t2t_replay(const ReplayOptions& opts) {
  const auto tracks = t2t::parse_sensor_tracks(read_file(opts.in));
  std::map<int, t2t::SensorPose> poses;
  if (!opts.poses.empty()) {
    poses = t2t::parse_poses(read_file(opts.poses));
  }
  std::vector<t2t::CycleOutput> cycles;
  if (!tracks.empty()) {
    const double first =
        std::min_element(tracks.begin(), tracks.end(), [](const auto& a, const auto& b) {
          return a.timestamp < b.timestamp;
        })->timestamp;
    cycles = sim::run_pipeline(tracks, poses, opts.fusion, first + 0.5 / opts.fusion.rate_hz);
  }
  write_file_atomic(output_path(opts.out), cycles_ldjson(cycles));
  std::cerr << "replayed " << tracks.size() << " sensor tracks, " << cycles.size()
            << " fusion cycles\n";
}

}  // namespace circfuse::cli
