#include "vecon/config.hpp"

#include <cmath>

namespace vecon {

std::string to_string(SkillInit s) {
  switch (s) {
    case SkillInit::uniform:
      return "uniform";
    case SkillInit::pareto_noise:
      return "pareto_noise";
    case SkillInit::normal:
      return "normal";
  }
  return "uniform";
}

SkillInit skill_init_from_string(const std::string& s) {
  if (s == "uniform") return SkillInit::uniform;
  if (s == "pareto_noise") return SkillInit::pareto_noise;
  if (s == "normal") return SkillInit::normal;
  throw ConfigError("env.skill_init", "unknown skill init '" + s + "'");
}

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ConfigError(std::string("env.") + field, what);
}

}  // namespace

void EnvConfig::validate() const {
  require(population_size >= 1, "population_size", "must be positive");
  require(num_resources >= 1, "num_resources", "must be positive");
  require(episode_length >= 1, "episode_length", "must be positive");
  require(tax_period_length >= 1, "tax_period_length", "must be positive");
  require(std::isfinite(starting_coin) && starting_coin >= 0.0, "starting_coin",
          "must be nonnegative");
  require(order_expiry >= 1, "order_expiry", "must be positive");
  require(!trade_prices.empty(), "trade_prices", "must be nonempty");
  for (std::size_t i = 0; i < trade_prices.size(); ++i) {
    require(trade_prices[i] > 0, "trade_prices", "prices must be positive");
    if (i > 0) require(trade_prices[i] > trade_prices[i - 1], "trade_prices", "must be strictly ascending");
  }
  require(max_active_orders >= 0, "max_active_orders", "must be nonnegative");
  require(craft_units_required >= 1, "craft_units_required", "must be positive");
  require(craft_distinct_required >= 1, "craft_distinct_required", "must be positive");
  require(craft_distinct_required <= num_resources, "craft_distinct_required",
          "must not exceed num_resources");
  require(labor_cost_craft >= 0.0, "labor_cost_craft", "must be nonnegative");
  require(labor_cost_gather >= 0.0, "labor_cost_gather", "must be nonnegative");
  require(labor_cost_trade >= 0.0, "labor_cost_trade", "must be nonnegative");
  require(utility_eta >= 0.0 && utility_eta != 1.0, "utility_eta", "must be >= 0 and != 1");
  require(equality_weight >= 0.0 && equality_weight <= 1.0, "equality_weight", "must lie in [0, 1]");
  require(craft_payout_scale >= 0.0, "craft_payout_scale", "must be nonnegative");
  for (std::size_t i = 1; i < bracket_thresholds.size(); ++i)
    require(bracket_thresholds[i] > bracket_thresholds[i - 1], "bracket_thresholds",
            "must be strictly ascending");
  for (double t : bracket_thresholds) require(t > 0.0, "bracket_thresholds", "must be positive");
  require(skill_growth_rate >= 0.0, "skill_growth_rate", "must be nonnegative");
  require(skill_max > 0.0, "skill_max", "must be positive");
  require(pareto_shape > 0.0, "pareto_shape", "must be positive");
  require(pareto_noise_std >= 0.0, "pareto_noise_std", "must be nonnegative");
  require(pareto_skill_min >= 0.0 && pareto_skill_min <= 1.0, "pareto_skill_min", "must lie in [0, 1]");
  require(normal_skill_std >= 0.0, "normal_skill_std", "must be nonnegative");
}

}  // namespace vecon
