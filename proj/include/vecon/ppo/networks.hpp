#pragma once

#include <cstdint>
#include <vector>

#include "vecon/config.hpp"
#include "vecon/nn/adam.hpp"
#include "vecon/nn/categorical.hpp"
#include "vecon/nn/checkpoint.hpp"
#include "vecon/nn/mlp.hpp"
#include "vecon/ppo/train_config.hpp"
#include "vecon/rng.hpp"

namespace vecon::ppo {

using nn::Real;

struct Network {
  nn::Mlp<Real> mlp;
  nn::AdamState<Real> opt;

  Network() = default;
  explicit Network(nn::MlpShape shape) : mlp(shape), opt(shape.num_params()) {}
  int num_params() const { return mlp.num_params(); }
};

/// Parameter wiring for one run. Population agent i acts with
/// policies[policy_of[i]] and is evaluated by values[value_of[i]]; the
/// government always owns a separate pair.
struct AgentNetworks {
  SharingMode mode = SharingMode::shared;
  int population = 0;
  int pop_obs_size = 0;
  int pop_actions = 0;
  bool with_agent_id = false;
  nn::HeadLayout pop_heads;

  std::vector<Network> policies;
  std::vector<Network> values;
  std::vector<int> policy_of;
  std::vector<int> value_of;

  bool has_government = false;
  int gov_obs_size = 0;
  nn::HeadLayout gov_heads;
  Network gov_policy;
  Network gov_value;

  /// Agents served by policy (or value) network k, in agent order.
  std::vector<int> agents_of_policy(int k) const;
  std::vector<int> agents_of_value(int k) const;

  std::int64_t population_param_count() const;
  std::int64_t government_param_count() const;
};

/// Government networks exist when both the government and taxes are enabled.
bool government_active(const EnvConfig& env, const TrainConfig& train);

/// Builds and initializes all networks. Hidden layers use orthogonal init with
/// gain sqrt(2); policy heads use 0.01 and value heads 1.0.
AgentNetworks build_sharing_mode(const EnvConfig& env, const TrainConfig& train, Rng& rng);

/// Parameters, optimizer moments and wiring as named tensors. Wiring goes to
/// meta["networks"]; other meta keys are left to the caller.
nn::TensorFile to_tensor_file(const AgentNetworks& nets);
AgentNetworks from_tensor_file(const nn::TensorFile& file);

}  // namespace vecon::ppo
