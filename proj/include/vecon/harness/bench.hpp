#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vecon/config.hpp"
#include "vecon/ppo/train_config.hpp"

namespace vecon::harness {

struct BenchOptions {
  EnvConfig env;
  ppo::TrainConfig train;
  std::vector<int> env_counts = {1, 2, 4, 8, 16};
  int steps_per_env = 1000;  // pure stepping
  int train_updates = 1;     // training loop, per env count
  int workers = 1;
  std::uint64_t seed = 1;
};

struct BenchRow {
  std::string mode;  // "step" or "train"
  int envs = 0;
  std::int64_t env_steps = 0;
  std::int64_t agent_steps = 0;
  double seconds = 0.0;
  double agent_steps_per_sec = 0.0;
};

struct BenchReport {
  int population = 0;
  int workers = 1;
  unsigned hardware_threads = 0;
  std::vector<BenchRow> rows;

  /// agent_steps_per_sec(envs = 2) / agent_steps_per_sec(envs = 1) for `mode`;
  /// NaN when either count was not measured.
  double scaling_2_over_1(const std::string& mode) const;
};

/// (a) random valid actions stepped across `envs` parallel environments and
/// (b) the full rollout + update loop, for each env count. Step counts are
/// deterministic; timings are not.
BenchReport run_bench(const BenchOptions& opts);

std::string bench_json(const BenchReport& report, const std::string& config_hash, std::uint64_t seed);

}  // namespace vecon::harness
