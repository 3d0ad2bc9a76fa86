#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vecon/config.hpp"
#include "vecon/ppo/networks.hpp"

namespace vecon::harness {

struct EvalOptions {
  int num_seeds = 15;
  std::uint64_t first_seed = 1;
};

struct EvalEpisode {
  std::uint64_t eval_seed = 0;
  double productivity = 0.0;
  double equality = 0.0;
  double gini = 0.0;
  double gov_utility = 0.0;
  double pop_return_mean = 0.0;
  double pop_return_median = 0.0;
  std::vector<double> tax_rates;                    // at episode end
  std::vector<std::vector<double>> action_fraction;  // agent x {gather, craft, buy, sell, noop}
  std::vector<std::vector<double>> price_series;     // step x resource mean trade price; NaN without trades
  std::vector<std::vector<int>> trade_series;        // step x resource trade count
};

/// Plays one full episode per eval seed with the frozen (sampled) policies.
/// Skills are the training run's fixed draw; only the episode stream and the
/// action sampling depend on the eval seed.
std::vector<EvalEpisode> evaluate(const EnvConfig& env, std::uint64_t run_seed, const ppo::AgentNetworks& nets,
                                  const EvalOptions& opts);

/// Writes eval_episodes.csv, eval_actions.csv and eval_prices.csv into `dir`.
void write_eval(const std::string& dir, const std::vector<EvalEpisode>& episodes, const std::string& config_hash,
                std::uint64_t seed);

}  // namespace vecon::harness
