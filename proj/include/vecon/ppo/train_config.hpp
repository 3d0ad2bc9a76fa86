#pragma once

#include <cstdint>
#include <string>

namespace vecon::ppo {

enum class SharingMode { shared, independent, ctde_naive, shared_agent_id };

std::string to_string(SharingMode m);
SharingMode sharing_mode_from_string(const std::string& s);

struct TrainConfig {
  std::int64_t total_timesteps = 10'000'000;  // environment steps summed over envs
  double learning_rate = 5e-4;
  bool anneal_lr = true;
  double gamma = 0.999;
  double gae_lambda = 0.95;
  double clip_eps = 0.2;
  double entropy_coef = 0.1;
  double entropy_anneal_fraction = 0.9;
  double value_coef = 0.25;
  double value_clip = 10.0;
  int rollout_length = 150;
  int num_epochs = 6;
  int num_minibatches = 6;
  int num_envs = 10;
  int hidden_width = 128;              // shared networks (and the government)
  int independent_hidden_width = 128;  // per-agent networks
  SharingMode sharing_mode = SharingMode::shared;
  bool government_enabled = true;
  bool normalize_advantages = true;
  double max_grad_norm = 0.5;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  int num_workers = 1;
  int checkpoint_interval = 0;  // in updates; 0 writes only the final checkpoint

  std::int64_t steps_per_update() const { return static_cast<std::int64_t>(rollout_length) * num_envs; }
  std::int64_t num_updates() const { return total_timesteps / steps_per_update(); }

  /// Linear decay to 0 over the whole run.
  double learning_rate_at(double progress) const {
    return anneal_lr ? learning_rate * (1.0 - progress) : learning_rate;
  }
  /// Linear decay to 0 over the first `entropy_anneal_fraction` of the run.
  double entropy_coef_at(double progress) const {
    if (entropy_anneal_fraction <= 0.0) return entropy_coef;
    const double f = 1.0 - progress / entropy_anneal_fraction;
    return entropy_coef * (f > 0.0 ? f : 0.0);
  }

  void validate() const;
};

}  // namespace vecon::ppo
