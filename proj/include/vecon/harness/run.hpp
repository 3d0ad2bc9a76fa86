#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "vecon/harness/run_config.hpp"
#include "vecon/ppo/trainer.hpp"

namespace vecon::harness {

/// $VECON_OUTPUT_ROOT, or "runs" when unset.
std::string output_root();

/// run.output_dir if set, otherwise <output root>/<run.name>.
std::string resolve_output_dir(const RunConfig& cfg);

/// Resolved configuration with hashes, as written to config.json.
nlohmann::json config_json(const RunConfig& cfg);

void save_checkpoint(const std::string& path, const RunConfig& cfg, const ppo::AgentNetworks& nets, int update,
                     std::int64_t global_step);

struct LoadedCheckpoint {
  RunConfig config;
  ppo::AgentNetworks networks;
  std::string config_hash;
  std::string env_hash;
  int update = 0;
  std::int64_t global_step = 0;
};

/// Throws nn::CheckpointError for missing or corrupt files.
LoadedCheckpoint load_checkpoint(const std::string& path);

/// Trains and writes config.json, config.txt, metrics.csv, metrics.jsonl and
/// checkpoints/ (final.ckpt plus update_<n>.ckpt at the configured interval).
/// Returns the output directory.
std::string run_training(const RunConfig& cfg, bool progress_to_stderr = false);

}  // namespace vecon::harness
