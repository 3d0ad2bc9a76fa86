#pragma once

#include <span>
#include <vector>

#include "vecon/agent.hpp"
#include "vecon/config.hpp"

namespace vecon {

/// Per-bracket rate level indices in [0, kRateLevels).
using RateAction = std::vector<int>;

struct TaxState {
  std::vector<double> bracket_thresholds;  // k ascending thresholds -> k+1 brackets
  std::vector<double> current_rates;       // k+1 rates, multiples of 0.05 in [0, 1]
  int period_start_step = 0;

  TaxState() = default;
  explicit TaxState(std::vector<double> thresholds)
      : bracket_thresholds(std::move(thresholds)), current_rates(bracket_thresholds.size() + 1, 0.0) {}

  int num_brackets() const { return static_cast<int>(current_rates.size()); }

  friend bool operator==(const TaxState&, const TaxState&) = default;
};

/// Tax owed on `income` under a marginal bracket schedule.
double marginal_tax(double income, std::span<const double> thresholds, std::span<const double> rates);

inline double marginal_tax(double income, const TaxState& tax) {
  return marginal_tax(income, tax.bracket_thresholds, tax.current_rates);
}

/// Collects tax on each agent's period income (capped at inventory coin),
/// returns the pot to everyone in equal shares, and zeroes period income.
/// Returns the total collected.
double collect_and_redistribute(std::span<AgentState> agents, const TaxState& tax);

/// Sets rates to 0.05 * level. Throws std::out_of_range on a bad level or length.
void apply_rate_action(TaxState& tax, std::span<const int> levels, int step);

}  // namespace vecon
