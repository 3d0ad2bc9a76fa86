#include "vecon/welfare.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vecon {

double isoelastic_utility(double coin, double labor, double eta) {
  if (eta == 1.0) throw std::invalid_argument("isoelastic utility undefined for eta == 1");
  const double e = 1.0 - eta;
  return (std::pow(coin, e) - 1.0) / e - labor;
}

double gini(std::span<const double> coins) {
  const std::size_t n = coins.size();
  if (n <= 1) return 0.0;
  std::vector<double> sorted(coins.begin(), coins.end());
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += sorted[i];
    weighted += (2.0 * static_cast<double>(i + 1) - static_cast<double>(n) - 1.0) * sorted[i];
  }
  if (total <= 0.0) return 0.0;
  return std::clamp(weighted / (static_cast<double>(n) * total), 0.0, 1.0);
}

SocialWelfare social_welfare(std::span<const double> coins, double equality_weight) {
  SocialWelfare w;
  for (double c : coins) w.productivity += c;
  w.equality = equality_weight * (1.0 - gini(coins)) + (1.0 - equality_weight);
  w.utility = w.equality * w.productivity;
  return w;
}

}  // namespace vecon
