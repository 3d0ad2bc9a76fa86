#pragma once

#include <vector>

#include "vecon/action_space.hpp"
#include "vecon/rng.hpp"
#include "vecon/world.hpp"

namespace vecon::testing {

/// Uniform draw over the agent's unmasked actions.
inline int random_valid_action(const WorldState& s, const EnvConfig& cfg, int agent, Rng& rng) {
  const auto mask = action_mask(s, cfg, agent);
  std::vector<int> allowed;
  for (std::size_t a = 0; a < mask.size(); ++a)
    if (mask[a]) allowed.push_back(static_cast<int>(a));
  return allowed[rng.below(allowed.size())];
}

inline std::vector<int> random_valid_actions(const WorldState& s, const EnvConfig& cfg, Rng& rng) {
  std::vector<int> out;
  for (int i = 0; i < cfg.population_size; ++i) out.push_back(random_valid_action(s, cfg, i, rng));
  return out;
}

inline std::vector<int> random_rate_levels(const EnvConfig& cfg, Rng& rng) {
  std::vector<int> out;
  for (int b = 0; b < cfg.num_brackets(); ++b) out.push_back(static_cast<int>(rng.below(kRateLevels)));
  return out;
}

/// True when every agent's escrow equals what its live orders commit.
inline bool escrow_reconciles(const WorldState& s) {
  const std::size_t n = s.agents.size();
  std::vector<double> coin(n, 0.0);
  std::vector<std::vector<int>> units(n, std::vector<int>(s.market.books.size(), 0));
  std::vector<int> live(n, 0);
  for (const auto& b : s.market.books) {
    for (const auto& o : b.bids) {
      coin[static_cast<std::size_t>(o.owner)] += o.price;
      ++live[static_cast<std::size_t>(o.owner)];
    }
    for (const auto& o : b.asks) {
      units[static_cast<std::size_t>(o.owner)][static_cast<std::size_t>(o.resource)] += 1;
      ++live[static_cast<std::size_t>(o.owner)];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = s.agents[i];
    if (a.escrow_coin != coin[i] || a.escrow_resources != units[i] || a.live_orders != live[i]) return false;
  }
  return true;
}

inline std::vector<long> total_units(const WorldState& s) {
  std::vector<long> t(s.market.books.size(), 0);
  for (const auto& a : s.agents)
    for (std::size_t r = 0; r < t.size(); ++r) t[r] += a.resources[r] + a.escrow_resources[r];
  return t;
}

}  // namespace vecon::testing
