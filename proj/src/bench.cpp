#include "vecon/harness/bench.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include <json.hpp>

#include "vecon/parallel.hpp"
#include "vecon/ppo/trainer.hpp"
#include "vecon/world.hpp"

namespace vecon::harness {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

BenchRow bench_step(const EnvConfig& cfg, int envs, int steps, WorkerPool& pool, std::uint64_t seed) {
  const auto E = static_cast<std::size_t>(envs);
  const auto N = static_cast<std::size_t>(cfg.population_size);
  const int A = ActionSpace(cfg).size();
  std::vector<WorldState> worlds;
  std::vector<Rng> rngs;
  for (std::size_t e = 0; e < E; ++e) {
    worlds.push_back(reset(cfg, seed, seed + e));
    rngs.emplace_back(seed, 500 + e);
  }
  const auto t0 = Clock::now();
  pool.parallel_for(E, [&](std::size_t e) {
    std::vector<int> actions(N);
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(A));
    std::vector<int> allowed;
    StepResult res;
    for (int t = 0; t < steps; ++t) {
      for (std::size_t i = 0; i < N; ++i) {
        action_mask(worlds[e], cfg, static_cast<int>(i), mask);
        allowed.clear();
        for (int a = 0; a < A; ++a)
          if (mask[static_cast<std::size_t>(a)]) allowed.push_back(a);
        actions[i] = allowed[rngs[e].below(allowed.size())];
      }
      step(cfg, worlds[e], actions, {}, res);
      if (res.done) worlds[e] = reset(cfg, seed, rngs[e].next_u64());
    }
  });
  BenchRow row;
  row.mode = "step";
  row.envs = envs;
  row.env_steps = static_cast<std::int64_t>(envs) * steps;
  row.agent_steps = row.env_steps * cfg.population_size;
  row.seconds = seconds_since(t0);
  return row;
}

BenchRow bench_train(const EnvConfig& cfg, ppo::TrainConfig train, int envs, int updates, int workers,
                     std::uint64_t seed) {
  train.num_envs = envs;
  train.num_workers = workers;
  train.total_timesteps = train.steps_per_update() * updates;
  const auto t0 = Clock::now();
  const auto result = ppo::train(cfg, train, seed);
  BenchRow row;
  row.mode = "train";
  row.envs = envs;
  row.env_steps = result.global_step;
  row.agent_steps = row.env_steps * cfg.population_size;
  row.seconds = seconds_since(t0);
  return row;
}

}  // namespace

double BenchReport::scaling_2_over_1(const std::string& mode) const {
  double one = 0.0, two = 0.0;
  for (const auto& r : rows) {
    if (r.mode != mode) continue;
    if (r.envs == 1) one = r.agent_steps_per_sec;
    if (r.envs == 2) two = r.agent_steps_per_sec;
  }
  return one > 0.0 && two > 0.0 ? two / one : std::numeric_limits<double>::quiet_NaN();
}

BenchReport run_bench(const BenchOptions& opts) {
  opts.env.validate();
  BenchReport report;
  report.population = opts.env.population_size;
  report.workers = opts.workers;
  report.hardware_threads = std::thread::hardware_concurrency();
  WorkerPool pool(opts.workers);
  for (int e : opts.env_counts) report.rows.push_back(bench_step(opts.env, e, opts.steps_per_env, pool, opts.seed));
  for (int e : opts.env_counts)
    report.rows.push_back(bench_train(opts.env, opts.train, e, opts.train_updates, opts.workers, opts.seed));
  for (auto& r : report.rows)
    r.agent_steps_per_sec = r.seconds > 0.0 ? static_cast<double>(r.agent_steps) / r.seconds : 0.0;
  return report;
}

std::string bench_json(const BenchReport& report, const std::string& config_hash, std::uint64_t seed) {
  nlohmann::json j;
  j["schema"] = "vecon-bench/1";
  j["config_hash"] = config_hash;
  j["seed"] = seed;
  j["population"] = report.population;
  j["workers"] = report.workers;
  j["hardware_threads"] = report.hardware_threads;
  auto& rows = j["results"] = nlohmann::json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"mode", r.mode},
                    {"envs", r.envs},
                    {"env_steps", r.env_steps},
                    {"agent_steps", r.agent_steps},
                    {"seconds", r.seconds},
                    {"agent_steps_per_sec", r.agent_steps_per_sec}});
  for (const char* mode : {"step", "train"}) {
    const double s = report.scaling_2_over_1(mode);
    j["scaling_2_over_1"][mode] = std::isfinite(s) ? nlohmann::json(s) : nlohmann::json(nullptr);
  }
  return j.dump(2);
}

}  // namespace vecon::harness
