#include "vecon/taxation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace vecon {

double marginal_tax(double income, std::span<const double> thresholds, std::span<const double> rates) {
  double tax = 0.0;
  double lower = 0.0;
  for (std::size_t b = 0; b < rates.size(); ++b) {
    if (income <= lower) break;
    const double upper = b < thresholds.size() ? thresholds[b] : income;
    tax += rates[b] * (std::min(income, upper) - lower);
    lower = upper;
  }
  return tax;
}

double collect_and_redistribute(std::span<AgentState> agents, const TaxState& tax) {
  if (agents.empty()) return 0.0;
  double total = 0.0;
  for (auto& a : agents) {
    const double due = std::min(marginal_tax(a.period_income, tax), a.coin);
    a.coin -= due;
    total += due;
    a.period_income = 0.0;
  }
  const double share = total / static_cast<double>(agents.size());
  for (auto& a : agents) a.coin += share;
  return total;
}

void apply_rate_action(TaxState& tax, std::span<const int> levels, int step) {
  if (levels.size() != tax.current_rates.size())
    throw std::out_of_range("rate action has " + std::to_string(levels.size()) + " levels, expected " +
                            std::to_string(tax.current_rates.size()));
  for (std::size_t b = 0; b < levels.size(); ++b) {
    if (levels[b] < 0 || levels[b] >= kRateLevels)
      throw std::out_of_range("rate level " + std::to_string(levels[b]) + " for bracket " +
                              std::to_string(b) + " is outside [0, 20]");
  }
  for (std::size_t b = 0; b < levels.size(); ++b) tax.current_rates[b] = kRateStep * levels[b];
  tax.period_start_step = step;
}

}  // namespace vecon
