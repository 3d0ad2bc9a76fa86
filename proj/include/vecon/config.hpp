#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace vecon {

enum class SkillInit { uniform, pareto_noise, normal };

std::string to_string(SkillInit s);
SkillInit skill_init_from_string(const std::string& s);

/// Thrown for invalid configuration values. `field()` names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct EnvConfig {
  int population_size = 100;
  int num_resources = 2;
  int episode_length = 1000;
  int tax_period_length = 100;
  bool allow_noop = true;
  double starting_coin = 15.0;
  int order_expiry = 30;
  std::vector<int> trade_prices = {2, 4, 6, 8, 10};
  int max_active_orders = 15;
  int craft_units_required = 2;     // units per resource
  int craft_distinct_required = 2;  // distinct resources
  double labor_cost_craft = 1.0;
  double labor_cost_gather = 1.0;
  double labor_cost_trade = 0.05;
  double utility_eta = 0.27;
  double equality_weight = 1.0;
  double craft_payout_scale = 10.0;
  std::vector<double> bracket_thresholds = {50.0, 100.0};
  double skill_growth_rate = 0.005;
  double skill_max = 5.0;
  bool skill_growth_enabled = false;
  bool taxes_enabled = true;
  SkillInit skill_init = SkillInit::uniform;

  // pareto_noise parameters
  double pareto_shape = 3.0;
  double pareto_noise_std = 0.05;
  double pareto_skill_min = 0.05;
  // normal parameters
  double normal_skill_mean = 1.0;
  double normal_skill_std = 1.0;

  int num_brackets() const { return static_cast<int>(bracket_thresholds.size()) + 1; }
  int num_prices() const { return static_cast<int>(trade_prices.size()); }
  int max_price() const { return trade_prices.back(); }

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
};

/// Number of rate levels per bracket: 0%, 5%, ..., 100%.
inline constexpr int kRateLevels = 21;
inline constexpr double kRateStep = 0.05;

/// Bracket thresholds approximating the 2025 Dutch brackets scaled down by 100.
/// The exact values are an approximation, not published figures.
inline const std::vector<double> kDutchScaledThresholds = {380.0, 770.0};

}  // namespace vecon
