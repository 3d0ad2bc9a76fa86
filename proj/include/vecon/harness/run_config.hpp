#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vecon/config.hpp"
#include "vecon/ppo/train_config.hpp"

namespace vecon::harness {

/// How env.craft_distinct_required is derived from env.num_resources.
///   fixed        use the configured value
///   log2         max(1, floor(log2(num_resources)))
///   literal_min  min(1, floor(log2(num_resources))), i.e. 1 for two or more resources
enum class DistinctRule { fixed, log2, literal_min };

std::string to_string(DistinctRule r);
DistinctRule distinct_rule_from_string(const std::string& s);

/// Craft payout scale used by the section4_default and free_market presets.
/// At the base default of 10, one craft pays less utility than the labor it
/// takes for every skill level in [0, 1], so trained agents stop working.
inline constexpr double kSection4PayoutScale = 40.0;

struct RunConfig {
  EnvConfig env;
  ppo::TrainConfig train;
  std::uint64_t seed = 1;
  std::string run_name = "run";
  std::string output_dir;  // empty: <output root>/<run_name>
  std::string preset = "section4_default";
  DistinctRule craft_distinct_rule = DistinctRule::fixed;

  /// env with craft_distinct_rule applied.
  EnvConfig resolved_env() const;

  /// Throws ConfigError naming the first invalid key.
  void validate() const;
};

const std::vector<std::string>& preset_names();

/// Throws ConfigError("run.preset") for unknown names.
RunConfig make_preset(const std::string& name);

/// Sets one dotted key from its text form. Throws ConfigError naming the key
/// when the key is unknown or the value does not parse.
void set_key(RunConfig& cfg, const std::string& key, const std::string& value);
std::string get_key(const RunConfig& cfg, const std::string& key);
const std::vector<std::string>& config_keys();

/// Config text: one `key = value` per line; `#` starts a comment; blank lines
/// are ignored; lists are comma separated. A `run.preset` line selects the base
/// preset before any other key is applied, wherever it appears.
RunConfig parse_config(const std::string& text);

/// Every key in config_keys() order, with doubles printed losslessly.
std::string serialize(const RunConfig& cfg);

/// FNV-1a over the serialized keys that influence results (everything except
/// run.name, run.output_dir, train.num_workers and train.checkpoint_interval).
std::string config_hash(const RunConfig& cfg);

/// FNV-1a over the resolved env.* keys only.
std::string env_hash(const RunConfig& cfg);

std::uint64_t fnv1a(const std::string& bytes);

}  // namespace vecon::harness
