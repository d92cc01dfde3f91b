#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "circfuse/distributions.hpp"
#include "circfuse/montecarlo.hpp"
#include "circfuse/t2t/pipeline.hpp"

namespace circfuse::cli {

/// Resolves relative output paths against $CIRCFUSE_OUTPUT_DIR when set.
std::filesystem::path output_path(const std::string& arg);

struct GridOptions {
  double lo = 0.01;
  double hi = 1.5;
  std::size_t points = kDefaultGridPoints;
};

struct McOptions {
  std::size_t trials = kDefaultTrials;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  GridOptions grid;
  std::string out;
};

struct VarianceOptions {
  McOptions mc;
  Family family = Family::kWrappedNormal;
  VarianceEstimator estimator = VarianceEstimator::kSecondMoment;
};

struct FusionOptions {
  McOptions mc;
  Family family = Family::kWrappedNormal;
  double sigma1 = 0.3;
  double kappa1 = 1.0 / 0.3;
  FusionRule rule = FusionRule::kWeighted;
};

struct StienneOptions {
  McOptions mc;
  double kappa1 = 0.5;
};

struct SimOptions {
  std::uint64_t seed = 7;
  std::string out;
  std::string sensor_out;
  std::string poses_out;
  t2t::FusionConfig fusion;
};

struct ReplayOptions {
  std::string in;
  std::string poses;
  std::string out;
  t2t::FusionConfig fusion;
};

void run_mc_variance(const VarianceOptions& opts);
void run_mc_fusion(const FusionOptions& opts);
void run_mc_stienne(const StienneOptions& opts);
void run_t2t_sim(const SimOptions& opts);
void run_t2t_replay(const ReplayOptions& opts);

}  // namespace circfuse::cli
