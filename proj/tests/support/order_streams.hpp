#pragma once

#include <algorithm>
#include <vector>

#include "vecon/agent.hpp"
#include "vecon/market.hpp"
#include "vecon/rng.hpp"

namespace vecon::testing {

struct OrderStream {
  int num_resources = 1;
  std::vector<AgentState> agents;
  MarketState market;
};

/// Random book of up to `max_orders` single-unit orders over up to
/// `max_resources` resources, placed through the engine so escrow is real.
/// Prices come from a small grid and placement steps from a short window so
/// price and age ties are frequent.
inline OrderStream random_order_stream(Rng& gen, int max_orders = 20, int max_resources = 3) {
  static constexpr int kPrices[] = {2, 4, 6, 8, 10};
  OrderStream s;
  s.num_resources = 1 + static_cast<int>(gen.below(static_cast<std::uint64_t>(max_resources)));
  const int num_agents = 2 + static_cast<int>(gen.below(4));
  s.agents.resize(static_cast<std::size_t>(num_agents));
  for (auto& a : s.agents) {
    a.coin = 1000.0;
    a.resources.assign(static_cast<std::size_t>(s.num_resources), 50);
    a.escrow_resources.assign(static_cast<std::size_t>(s.num_resources), 0);
    a.gather_skill.assign(static_cast<std::size_t>(s.num_resources), 0.0);
  }
  s.market = MarketState(s.num_resources);
  const int count = 1 + static_cast<int>(gen.below(static_cast<std::uint64_t>(max_orders)));
  int placed_at = 0;
  for (int k = 0; k < count; ++k) {
    if (gen.below(3) == 0) placed_at += 1;
    const int owner = static_cast<int>(gen.below(static_cast<std::uint64_t>(num_agents)));
    const int resource = static_cast<int>(gen.below(static_cast<std::uint64_t>(s.num_resources)));
    const Side side = gen.below(2) == 0 ? Side::buy : Side::sell;
    const int price = kPrices[gen.below(5)];
    place_order(s.market, s.agents, owner, resource, side, price, placed_at, 1000);
  }
  return s;
}

inline std::vector<Order> live_orders(const MarketState& m) {
  std::vector<Order> out;
  for (const auto& b : m.books) {
    out.insert(out.end(), b.bids.begin(), b.bids.end());
    out.insert(out.end(), b.asks.begin(), b.asks.end());
  }
  return out;
}

}  // namespace vecon::testing
