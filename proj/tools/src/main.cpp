#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "circfuse/errors.hpp"
#include "commands.hpp"

namespace {

using namespace circfuse;

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;

const std::map<std::string, Family> kFamilies = {{"wn", Family::kWrappedNormal},
                                                 {"vm", Family::kVonMises}};
const std::map<std::string, DispersionKind> kHeadingKinds = {
    {"wn", DispersionKind::kWnVariance}, {"vm", DispersionKind::kVmKappa}};

void add_mc_flags(CLI::App* cmd, cli::McOptions& mc) {
  cmd->add_option("--trials", mc.trials, "Samples per grid point")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", mc.seed, "Master seed");
  cmd->add_option("--threads", mc.threads, "Worker threads (0 = all cores)");
  cmd->add_option("--grid-min", mc.grid.lo, "Smallest grid value")->check(CLI::PositiveNumber);
  cmd->add_option("--grid-max", mc.grid.hi, "Largest grid value")->check(CLI::PositiveNumber);
  cmd->add_option("--points", mc.grid.points, "Log-spaced grid points")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", mc.out, "CSV output file")->required();
}

void add_fusion_flags(CLI::App* cmd, t2t::FusionConfig& cfg) {
  cmd->add_option("--rate", cfg.rate_hz, "Fusion rate [Hz]")->check(CLI::PositiveNumber);
  cmd->add_option("--gate", cfg.gate, "Association gate")->check(CLI::PositiveNumber);
  cmd->add_flag("--use-heading", cfg.use_heading, "Include heading in association distance");
  cmd->add_option("--q", cfg.cv.q, "CV velocity process noise")->check(CLI::NonNegativeNumber);
  cmd->add_option("--heading-inflation", cfg.cv.heading_inflation,
                  "Heading variance growth per predicted second")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--drop-timeout", cfg.drop_timeout, "System track drop timeout [s]")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--history-depth", cfg.history_depth, "Track history depth [cycles]")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--heading-kind", cfg.heading_kind, "Heading dispersion family: wn|vm")
      ->transform(CLI::CheckedTransformer(kHeadingKinds, CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circular fusion experiments and two-radar track-to-track fusion"};
  app.require_subcommand(1);

  cli::VarianceOptions var_opts;
  var_opts.mc.grid.hi = 10.0;
  auto* mc_variance = app.add_subcommand("mc-variance", "Variance estimator accuracy sweep");
  add_mc_flags(mc_variance, var_opts.mc);
  mc_variance->add_option("--family", var_opts.family, "wn (grid is sigma^2) | vm (grid is kappa)")
      ->transform(CLI::CheckedTransformer(kFamilies, CLI::ignore_case));
  mc_variance
      ->add_option("--estimator", var_opts.estimator,
                   "moment (wn_variance / vm_concentration) | ss (Stupavsky-Symons)")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, VarianceEstimator>{
              {"moment", VarianceEstimator::kSecondMoment},
              {"ss", VarianceEstimator::kStupavskySymons}},
          CLI::ignore_case));

  cli::FusionOptions fus_opts;
  auto* mc_fusion = app.add_subcommand("mc-fusion", "Two-sensor fused dispersion sweep");
  add_mc_flags(mc_fusion, fus_opts.mc);
  mc_fusion->add_option("--family", fus_opts.family, "wn | vm")
      ->transform(CLI::CheckedTransformer(kFamilies, CLI::ignore_case));
  mc_fusion->add_option("--sigma1", fus_opts.sigma1, "Sensor 1 WN variance")
      ->check(CLI::PositiveNumber);
  mc_fusion->add_option("--kappa1", fus_opts.kappa1, "Sensor 1 VM concentration")
      ->check(CLI::PositiveNumber);
  mc_fusion->add_option("--rule", fus_opts.rule, "weighted | mean")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, FusionRule>{{"weighted", FusionRule::kWeighted},
                                            {"mean", FusionRule::kMean}},
          CLI::ignore_case));

  cli::StienneOptions st_opts;
  auto* mc_stienne =
      app.add_subcommand("mc-stienne", "Circular-variance fusion baseline sweep (VM)");
  add_mc_flags(mc_stienne, st_opts.mc);
  mc_stienne->add_option("--kappa1", st_opts.kappa1, "Sensor 1 VM concentration")
      ->check(CLI::PositiveNumber);

  cli::SimOptions sim_opts;
  auto* t2t_sim = app.add_subcommand("t2t-sim", "Simulate the two-radar scenario and fuse it");
  t2t_sim->add_option("--seed", sim_opts.seed, "Scenario seed");
  t2t_sim->add_option("--out", sim_opts.out, "System track LDJSON output")->required();
  t2t_sim->add_option("--sensor-out", sim_opts.sensor_out, "Sensor-frame track LDJSON output");
  t2t_sim->add_option("--poses-out", sim_opts.poses_out, "Sensor pose JSON output");
  add_fusion_flags(t2t_sim, sim_opts.fusion);

  cli::ReplayOptions rep_opts;
  auto* t2t_replay =
      app.add_subcommand("t2t-replay", "Run recorded sensor tracks through the fusion pipeline");
  t2t_replay->add_option("--in", rep_opts.in, "Sensor track LDJSON input")->required();
  t2t_replay->add_option("--poses", rep_opts.poses,
                         "Sensor pose JSON (tracks are taken as aligned when omitted)");
  t2t_replay->add_option("--out", rep_opts.out, "System track LDJSON output")->required();
  add_fusion_flags(t2t_replay, rep_opts.fusion);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*mc_variance) {
      cli::run_mc_variance(var_opts);
    } else if (*mc_fusion) {
      cli::run_mc_fusion(fus_opts);
    } else if (*mc_stienne) {
      cli::run_mc_stienne(st_opts);
    } else if (*t2t_sim) {
      cli::run_t2t_sim(sim_opts);
    } else if (*t2t_replay) {
      cli::run_t2t_replay(rep_opts);
    }
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
