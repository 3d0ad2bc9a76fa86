#include "vecon/ppo/train_config.hpp"

#include "vecon/config.hpp"

namespace vecon::ppo {

std::string to_string(SharingMode m) {
  switch (m) {
    case SharingMode::shared:
      return "shared";
    case SharingMode::independent:
      return "independent";
    case SharingMode::ctde_naive:
      return "ctde_naive";
    case SharingMode::shared_agent_id:
      return "shared_agent_id";
  }
  return "shared";
}

SharingMode sharing_mode_from_string(const std::string& s) {
  if (s == "shared") return SharingMode::shared;
  if (s == "independent") return SharingMode::independent;
  if (s == "ctde_naive") return SharingMode::ctde_naive;
  if (s == "shared_agent_id") return SharingMode::shared_agent_id;
  throw ConfigError("train.sharing_mode", "unknown sharing mode '" + s + "'");
}

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ConfigError(std::string("train.") + field, what);
}

}  // namespace

void TrainConfig::validate() const {
  require(total_timesteps >= 0, "total_timesteps", "must be nonnegative");
  require(learning_rate >= 0.0, "learning_rate", "must be nonnegative");
  require(gamma >= 0.0 && gamma <= 1.0, "gamma", "must lie in [0, 1]");
  require(gae_lambda >= 0.0 && gae_lambda <= 1.0, "gae_lambda", "must lie in [0, 1]");
  require(clip_eps > 0.0, "clip_eps", "must be positive");
  require(entropy_coef >= 0.0, "entropy_coef", "must be nonnegative");
  require(entropy_anneal_fraction >= 0.0, "entropy_anneal_fraction", "must be nonnegative");
  require(value_coef >= 0.0, "value_coef", "must be nonnegative");
  require(value_clip > 0.0, "value_clip", "must be positive");
  require(rollout_length >= 1, "rollout_length", "must be positive");
  require(num_epochs >= 1, "num_epochs", "must be positive");
  require(num_minibatches >= 1, "num_minibatches", "must be positive");
  require(num_envs >= 1, "num_envs", "must be positive");
  require(hidden_width >= 1, "hidden_width", "must be positive");
  require(independent_hidden_width >= 1, "independent_hidden_width", "must be positive");
  require(num_workers >= 1, "num_workers", "must be positive");
  require(checkpoint_interval >= 0, "checkpoint_interval", "must be nonnegative");
  require(adam_eps > 0.0, "adam_eps", "must be positive");
}

}  // namespace vecon::ppo
