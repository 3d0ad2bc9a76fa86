#pragma once

#include <span>
#include <vector>

namespace vecon {

/// (C^(1-eta) - 1) / (1 - eta) - L. Throws std::invalid_argument for eta == 1.
double isoelastic_utility(double coin, double labor, double eta);

/// Gini index in [0, 1]; 0 for a single agent or an all-zero vector.
double gini(std::span<const double> coins);

struct SocialWelfare {
  double equality = 1.0;
  double productivity = 0.0;
  double utility = 0.0;  // equality * productivity
};

/// equality = w * (1 - gini) + (1 - w); productivity = total coin.
SocialWelfare social_welfare(std::span<const double> coins, double equality_weight);

inline double reward_delta(double prev_utility, double next_utility) { return next_utility - prev_utility; }

struct WelfareSnapshot {
  std::vector<double> agent_utility;
  double gov_utility = 0.0;
  double gini = 0.0;
  double equality = 1.0;
  double productivity = 0.0;
};

}  // namespace vecon
