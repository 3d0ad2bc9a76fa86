#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vecon/config.hpp"
#include "vecon/parallel.hpp"
#include "vecon/ppo/networks.hpp"
#include "vecon/ppo/train_config.hpp"
#include "vecon/rng.hpp"
#include "vecon/world.hpp"

namespace vecon::ppo {

using IntMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Welfare and returns of one finished episode.
struct EpisodeSummary {
  int env = 0;
  std::vector<double> agent_returns;  // u_T - u_0 per agent
  double gov_return = 0.0;
  double productivity = 0.0;
  double equality = 1.0;
  double gov_utility = 0.0;
  std::vector<double> tax_rates;
};

/// Independent environment copies sharing one skill draw. Each copy resets
/// from its own stream of episode seeds.
class VecEnv {
 public:
  VecEnv(const EnvConfig& cfg, int num_envs, std::uint64_t run_seed);

  const EnvConfig& config() const { return cfg_; }
  int size() const { return static_cast<int>(envs_.size()); }
  int population() const { return cfg_.population_size; }
  WorldState& env(int e) { return envs_[static_cast<std::size_t>(e)]; }
  const WorldState& env(int e) const { return envs_[static_cast<std::size_t>(e)]; }

  /// Steps env e; on episode end records a summary and resets in place.
  /// Returns true if the episode ended.
  bool step(int e, std::span<const int> actions, std::span<const int> gov_levels, StepResult& out);

  /// Summaries recorded since the last call, in (env, completion) order.
  std::vector<EpisodeSummary> take_finished();

 private:
  void reset_env(int e);

  EnvConfig cfg_;
  std::uint64_t skill_seed_;
  std::vector<WorldState> envs_;
  std::vector<Rng> episode_seeds_;
  std::vector<std::vector<double>> returns_;
  std::vector<double> gov_returns_;
  std::vector<std::vector<EpisodeSummary>> finished_;
};

/// Per-rollout behaviour counters used for metrics.
struct RolloutStats {
  std::vector<std::int64_t> action_kinds;  // gather, craft, buy, sell, noop
  std::vector<double> price_sum;           // per resource
  std::vector<std::int64_t> trade_count;   // per resource
  std::vector<double> gov_level_sum;       // per bracket
  std::int64_t gov_samples = 0;
  std::vector<EpisodeSummary> episodes;
};

/// Transitions of one rollout. Population rows are indexed (t * E + e) * N + i;
/// government rows t * E + e. T x K matrices are time-major with column e * N + i
/// (or e for the government), so their row-major storage follows row order.
struct RolloutBatch {
  int T = 0, E = 0, N = 0;

  nn::Matrix<Real> pop_obs;
  nn::MaskMatrix pop_mask;
  IntMatrix pop_actions;  // rows x 1
  nn::Vector<Real> pop_logp;
  nn::Matrix<Real> pop_values, pop_rewards, pop_dones;
  nn::Vector<Real> pop_bootstrap;

  bool has_government = false;
  nn::Matrix<Real> gov_obs;
  IntMatrix gov_actions;  // rows x brackets
  nn::Vector<Real> gov_logp;
  nn::Matrix<Real> gov_values, gov_rewards, gov_dones;
  nn::Vector<Real> gov_bootstrap;

  RolloutStats stats;

  int pop_rows() const { return T * E * N; }
  int gov_rows() const { return T * E; }
};

/// Steps every env `rollout_length` times, sampling population and government
/// actions from the current networks with `rng` in row order.
void collect_rollout(VecEnv& envs, const AgentNetworks& nets, const TrainConfig& cfg, Rng& rng, WorkerPool& pool,
                     RolloutBatch& batch);

struct UpdateStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double approx_kl = 0.0;
  double clip_fraction = 0.0;
  double gov_policy_loss = 0.0;
  double gov_value_loss = 0.0;
  double gov_entropy = 0.0;
  double learning_rate = 0.0;
  double entropy_coef = 0.0;
};

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// num_epochs passes of shuffled minibatches over every network in `nets`.
/// Throws TrainingError on a non-finite loss, before any parameter changes
/// from that minibatch.
UpdateStats ppo_update(AgentNetworks& nets, const RolloutBatch& batch, const TrainConfig& cfg, double progress,
                       Rng& rng);

struct MetricsRecord {
  int update = 0;
  std::int64_t global_step = 0;
  std::int64_t episodes = 0;  // completed so far, summed over envs
  // Episode-end values of the most recent completed episodes; NaN before any.
  double pop_return_mean = 0.0;
  double pop_return_median = 0.0;
  double productivity = 0.0;
  double equality = 0.0;
  double gov_utility = 0.0;
  double gov_return = 0.0;
  std::vector<double> tax_rates;    // mean over envs at the end of the rollout
  std::vector<double> trade_price;  // per resource; NaN without trades
  std::vector<double> action_fraction;  // gather, craft, buy, sell, noop
  std::vector<double> gov_level_mean;   // per bracket; NaN without a government
  UpdateStats losses;
  double steps_per_sec = 0.0;  // wall-clock; never part of deterministic outputs
};

using MetricsSink = std::function<void(const MetricsRecord&)>;
using CheckpointSink = std::function<void(const AgentNetworks&, int update, std::int64_t global_step)>;

struct TrainResult {
  AgentNetworks networks;
  int updates = 0;
  std::int64_t global_step = 0;
};

/// Alternates rollouts and updates for total_timesteps / (rollout_length *
/// num_envs) updates. Calls `checkpoint` every checkpoint_interval updates and
/// once at the end.
TrainResult train(const EnvConfig& env, const TrainConfig& cfg, std::uint64_t seed, const MetricsSink& metrics = {},
                  const CheckpointSink& checkpoint = {});

/// Seeds derived from the run seed.
struct RunSeeds {
  std::uint64_t init;   // network initialization stream
  std::uint64_t learn;  // sampling and minibatch shuffles
  std::uint64_t skill;  // agent skills, fixed for the run
  static RunSeeds from(std::uint64_t seed);
};

}  // namespace vecon::ppo
