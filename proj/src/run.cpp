#include "vecon/harness/run.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "vecon/harness/metrics.hpp"
#include "vecon/nn/checkpoint.hpp"

namespace vecon::harness {

namespace fs = std::filesystem;

std::string output_root() {
  const char* root = std::getenv("VECON_OUTPUT_ROOT");
  return root && *root ? root : "runs";
}

std::string resolve_output_dir(const RunConfig& cfg) {
  return cfg.output_dir.empty() ? (fs::path(output_root()) / cfg.run_name).string() : cfg.output_dir;
}

nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["config_hash"] = config_hash(cfg);
  j["env_hash"] = env_hash(cfg);
  j["seed"] = cfg.seed;
  j["preset"] = cfg.preset;
  auto& keys = j["config"] = nlohmann::json::object();
  for (const auto& k : config_keys()) keys[k] = get_key(cfg, k);
  j["resolved_craft_distinct_required"] = cfg.resolved_env().craft_distinct_required;
  return j;
}

void save_checkpoint(const std::string& path, const RunConfig& cfg, const ppo::AgentNetworks& nets, int update,
                     std::int64_t global_step) {
  nn::TensorFile f = ppo::to_tensor_file(nets);
  f.meta["config"] = serialize(cfg);
  f.meta["config_hash"] = config_hash(cfg);
  f.meta["env_hash"] = env_hash(cfg);
  f.meta["seed"] = cfg.seed;
  f.meta["update"] = update;
  f.meta["global_step"] = global_step;
  f.save(path);
}

LoadedCheckpoint load_checkpoint(const std::string& path) {
  const nn::TensorFile f = nn::TensorFile::load(path);
  LoadedCheckpoint c;
  try {
    c.config = parse_config(f.meta.at("config").get<std::string>());
    c.config_hash = f.meta.at("config_hash").get<std::string>();
    c.env_hash = f.meta.at("env_hash").get<std::string>();
    c.update = f.meta.at("update").get<int>();
    c.global_step = f.meta.at("global_step").get<std::int64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw nn::CheckpointError(std::string("checkpoint metadata incomplete: ") + e.what());
  } catch (const ConfigError& e) {
    throw nn::CheckpointError(std::string("checkpoint holds an invalid config: ") + e.what());
  }
  if (config_hash(c.config) != c.config_hash) throw nn::CheckpointError("checkpoint config hash does not match its config");
  c.networks = ppo::from_tensor_file(f);
  return c;
}

std::string run_training(const RunConfig& cfg, bool progress_to_stderr) {
  cfg.validate();
  const std::string dir = resolve_output_dir(cfg);
  fs::create_directories(fs::path(dir) / "checkpoints");
  const std::string hash = config_hash(cfg);
  {
    std::ofstream j(fs::path(dir) / "config.json");
    j << config_json(cfg).dump(2) << '\n';
    std::ofstream t(fs::path(dir) / "config.txt");
    t << "# config_hash " << hash << " seed " << cfg.seed << '\n' << serialize(cfg);
    if (!j || !t) throw std::runtime_error("cannot write config snapshot in " + dir);
  }
  const EnvConfig env = cfg.resolved_env();
  MetricsWriter writer(dir, hash, cfg.seed, env.num_brackets(), env.num_resources);
  const int updates = static_cast<int>(cfg.train.num_updates());
  ppo::train(
      env, cfg.train, cfg.seed,
      [&](const ppo::MetricsRecord& r) {
        writer.write(r);
        if (progress_to_stderr)
          std::fprintf(stderr, "update %d/%d step %lld return %s productivity %s equality %s (%.0f steps/s)\n",
                       r.update, updates, static_cast<long long>(r.global_step),
                       format_float(r.pop_return_mean).c_str(), format_float(r.productivity).c_str(),
                       format_float(r.equality).c_str(), r.steps_per_sec);
      },
      [&](const ppo::AgentNetworks& nets, int update, std::int64_t step) {
        const bool final = update == updates;
        char name[64];
        std::snprintf(name, sizeof name, "update_%06d.ckpt", update);
        save_checkpoint((fs::path(dir) / "checkpoints" / (final ? "final.ckpt" : name)).string(), cfg, nets, update,
                        step);
      });
  return dir;
}

}  // namespace vecon::harness
