#pragma once

#include <span>
#include <string>
#include <vector>

#include "vecon/config.hpp"
#include "vecon/market.hpp"
#include "vecon/world.hpp"

namespace vecon {

// Normalization constants for observation entries.
inline constexpr double kCoinScale = 1.0 / 100.0;   // coin, labor, income
inline constexpr double kCountScale = 1.0 / 10.0;   // resource units, order counts

struct ObsField {
  std::string name;
  int offset = 0;
  int width = 0;
};

/// Flat observation layout. Population layout (version 1):
///   coin, resources[R], escrow_coin, escrow_resources[R], gather_skill[R],
///   craft_skill, labor, period_income,
///   market[R x (highest_bid, lowest_ask, buy_count, sell_count, last_price)],
///   tax_rates[B], period_progress, episode_progress, [agent_id one-hot n]
/// Government layout (version 1):
///   {mean, std, median} x (coin, labor, period_income, resources[R]),
///   tax_rates[B], period_progress, episode_progress
class ObservationLayout {
 public:
  static constexpr int kVersion = 1;

  static ObservationLayout population(const EnvConfig& cfg, bool with_agent_id);
  static ObservationLayout government(const EnvConfig& cfg);

  int size() const { return size_; }
  const std::vector<ObsField>& fields() const { return fields_; }
  const ObsField& field(const std::string& name) const;

  /// One line per field: "name offset width".
  std::string schema() const;

 private:
  void add(std::string name, int width);

  std::vector<ObsField> fields_;
  int size_ = 0;
};

void build_pop_obs(const WorldState& state, const EnvConfig& cfg, int agent, bool with_agent_id,
                   std::span<const BookStats> stats, std::span<float> out);

std::vector<float> build_pop_obs(const WorldState& state, const EnvConfig& cfg, int agent,
                                 bool with_agent_id = false);

void build_gov_obs(const WorldState& state, const EnvConfig& cfg, std::span<float> out);
std::vector<float> build_gov_obs(const WorldState& state, const EnvConfig& cfg);

struct PopulationStat {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
  double median = 0.0;
};

PopulationStat population_stat(std::span<const double> values);

}  // namespace vecon
