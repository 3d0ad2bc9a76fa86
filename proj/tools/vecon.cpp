// Command-line front end: train, eval, bench, print-config.
//
// Exit codes: 0 success, 1 runtime failure, 2 configuration or usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "vecon/harness/bench.hpp"
#include "vecon/harness/eval.hpp"
#include "vecon/harness/run.hpp"
#include "vecon/harness/run_config.hpp"
#include "vecon/nn/checkpoint.hpp"

namespace fs = std::filesystem;
using namespace vecon;
using namespace vecon::harness;

namespace {

struct ConfigArgs {
  std::string config_file;
  std::string preset;
  std::vector<std::string> sets;
  std::int64_t seed = -1;
  std::int64_t total_steps = -1;
  int workers = 0;
  std::string out;
  std::string name;
};

void add_config_options(CLI::App* app, ConfigArgs& a) {
  app->add_option("--config", a.config_file, "config file with `key = value` lines");
  app->add_option("--preset", a.preset, "base preset (section4_default, free_market, section5_multiagent)");
  app->add_option("--set", a.sets, "override, e.g. --set env.population_size=4 (repeatable)");
  app->add_option("--seed", a.seed, "run seed");
  app->add_option("--total-steps", a.total_steps, "train.total_timesteps");
  app->add_option("--workers", a.workers, "worker threads for environment stepping");
  app->add_option("--out", a.out, "output directory");
  app->add_option("--name", a.name, "run name");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig build_config(const ConfigArgs& a) {
  std::string text = a.config_file.empty() ? "" : read_file(a.config_file);
  // The last run.preset line wins, so the flag overrides the file.
  if (!a.preset.empty()) text += "\nrun.preset = " + a.preset + "\n";
  RunConfig cfg = parse_config(text);
  for (const auto& s : a.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(s, "expected key=value");
    std::string key = s.substr(0, eq);
    while (!key.empty() && key.back() == ' ') key.pop_back();
    if (key == "run.preset") throw ConfigError(key, "use --preset to select a preset");
    set_key(cfg, key, s.substr(eq + 1));
  }
  if (a.seed >= 0) cfg.seed = static_cast<std::uint64_t>(a.seed);
  if (a.total_steps >= 0) cfg.train.total_timesteps = a.total_steps;
  if (a.workers > 0) cfg.train.num_workers = a.workers;
  if (!a.out.empty()) cfg.output_dir = a.out;
  if (!a.name.empty()) cfg.run_name = a.name;
  cfg.validate();
  return cfg;
}

int cmd_train(const ConfigArgs& a, bool quiet) {
  const RunConfig cfg = build_config(a);
  const std::string dir = run_training(cfg, !quiet);
  std::cout << dir << '\n';
  return 0;
}

int cmd_print_config(const ConfigArgs& a) {
  const RunConfig cfg = build_config(a);
  std::cout << "# config_hash " << config_hash(cfg) << " env_hash " << env_hash(cfg) << '\n' << serialize(cfg);
  return 0;
}

struct EvalArgs {
  std::string checkpoint;
  std::string config_file;
  int seeds = 15;
  std::uint64_t first_seed = 1;
  std::string out;
  bool force = false;
};

int cmd_eval(const EvalArgs& a) {
  LoadedCheckpoint ckpt = load_checkpoint(a.checkpoint);
  RunConfig cfg = ckpt.config;
  if (!a.config_file.empty()) {
    const RunConfig requested = parse_config(read_file(a.config_file));
    if (env_hash(requested) != ckpt.env_hash && !a.force) {
      std::cerr << "error: checkpoint env hash " << ckpt.env_hash << " does not match config env hash "
                << env_hash(requested) << " (use --force to evaluate anyway)\n";
      return 2;
    }
    cfg.env = requested.env;
    cfg.craft_distinct_rule = requested.craft_distinct_rule;
  }
  const std::string dir = a.out.empty() ? (fs::path(a.checkpoint).parent_path() / ".." / "eval").lexically_normal().string() : a.out;
  fs::create_directories(dir);
  EvalOptions opts;
  opts.num_seeds = a.seeds;
  opts.first_seed = a.first_seed;
  const auto episodes = evaluate(cfg.resolved_env(), cfg.seed, ckpt.networks, opts);
  write_eval(dir, episodes, config_hash(cfg), cfg.seed);
  std::cout << dir << '\n';
  return 0;
}

struct BenchArgs {
  ConfigArgs config;
  std::vector<int> envs = {1, 2, 4, 8, 16};
  int steps = 1000;
  int updates = 1;
  std::string out;
};

int cmd_bench(BenchArgs& a) {
  if (a.config.preset.empty() && a.config.config_file.empty()) a.config.preset = "free_market";
  bool has_population = false;
  for (const auto& s : a.config.sets) has_population |= s.rfind("env.population_size", 0) == 0;
  if (!has_population) a.config.sets.insert(a.config.sets.begin(), "env.population_size=4");
  const RunConfig cfg = build_config(a.config);
  BenchOptions opts;
  opts.env = cfg.resolved_env();
  opts.train = cfg.train;
  opts.env_counts = a.envs;
  opts.steps_per_env = a.steps;
  opts.train_updates = a.updates;
  opts.workers = a.config.workers > 0 ? a.config.workers : std::max(1u, std::thread::hardware_concurrency());
  opts.seed = cfg.seed;
  const std::string json = bench_json(run_bench(opts), config_hash(cfg), cfg.seed);
  if (a.out.empty()) {
    std::cout << json << '\n';
  } else {
    std::ofstream f(a.out);
    f << json << '\n';
    if (!f) throw std::runtime_error("cannot write " + a.out);
    std::cout << a.out << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent economy simulator with PPO training"};
  app.require_subcommand(1);

  ConfigArgs train_args, print_args;
  bool quiet = false;
  auto* train = app.add_subcommand("train", "train population (and government) policies");
  add_config_options(train, train_args);
  train->add_flag("--quiet", quiet, "no progress output");

  auto* print = app.add_subcommand("print-config", "print the resolved configuration");
  add_config_options(print, print_args);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "evaluate a checkpoint over several environment seeds");
  eval->add_option("--checkpoint", eval_args.checkpoint, "checkpoint file")->required();
  eval->add_option("--config", eval_args.config_file, "environment config to evaluate in (defaults to the checkpoint's)");
  eval->add_option("--seeds", eval_args.seeds, "number of evaluation seeds");
  eval->add_option("--first-seed", eval_args.first_seed, "first evaluation seed");
  eval->add_option("--out", eval_args.out, "output directory (default: <run>/eval)");
  eval->add_flag("--force", eval_args.force, "evaluate even if the environment config differs");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "measure environment and training throughput");
  add_config_options(bench, bench_args.config);
  bench->add_option("--envs", bench_args.envs, "environment counts")->delimiter(',');
  bench->add_option("--steps", bench_args.steps, "steps per environment for pure stepping");
  bench->add_option("--updates", bench_args.updates, "training updates per environment count");
  bench->add_option("--json", bench_args.out, "write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*train) return cmd_train(train_args, quiet);
    if (*print) return cmd_print_config(print_args);
    if (*eval) return cmd_eval(eval_args);
    if (*bench) return cmd_bench(bench_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const nn::CheckpointError& e) {
    std::cerr << "checkpoint error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
