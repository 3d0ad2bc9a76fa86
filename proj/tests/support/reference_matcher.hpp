#pragma once

// Brute-force matcher used as an oracle for vecon::match_round. It rebuilds and
// fully sorts the candidate lists on every iteration instead of scanning.

#include <algorithm>
#include <vector>

#include "vecon/market.hpp"
#include "vecon/rng.hpp"

namespace vecon::testing {

inline std::vector<Trade> reference_match(std::vector<Order> orders, int num_resources, Rng& rng) {
  std::vector<Trade> trades;
  std::sort(orders.begin(), orders.end(),
            [](const Order& a, const Order& b) { return a.order_id < b.order_id; });

  // Picks the head of a sorted list, drawing uniformly among entries tied on price and age.
  auto pick = [&](const std::vector<Order>& sorted) -> Order {
    std::size_t tied = 1;
    while (tied < sorted.size() && sorted[tied].price == sorted[0].price &&
           sorted[tied].placed_at == sorted[0].placed_at)
      ++tied;
    return tied == 1 ? sorted[0] : sorted[rng.below(tied)];
  };
  auto remove = [&](std::uint64_t id) {
    orders.erase(std::find_if(orders.begin(), orders.end(), [&](const Order& o) { return o.order_id == id; }));
  };

  for (int r = 0; r < num_resources; ++r) {
    std::vector<std::uint64_t> passed;
    for (;;) {
      std::vector<Order> bids, asks;
      for (const Order& o : orders) {
        if (o.resource != r) continue;
        if (o.side == Side::sell) {
          asks.push_back(o);
        } else if (std::find(passed.begin(), passed.end(), o.order_id) == passed.end()) {
          bids.push_back(o);
        }
      }
      bool any_bid = false;
      for (const Order& o : orders) any_bid |= (o.resource == r && o.side == Side::buy);
      if (!any_bid || asks.empty() || bids.empty()) break;

      std::sort(bids.begin(), bids.end(), [](const Order& a, const Order& b) {
        if (a.price != b.price) return a.price > b.price;
        if (a.placed_at != b.placed_at) return a.placed_at < b.placed_at;
        return a.order_id < b.order_id;
      });
      int lowest_ask = asks.front().price;
      for (const Order& o : asks) lowest_ask = std::min(lowest_ask, o.price);
      if (bids.front().price < lowest_ask) break;

      const Order bid = pick(bids);
      std::vector<Order> cands;
      for (const Order& o : asks)
        if (o.owner != bid.owner && o.price <= bid.price) cands.push_back(o);
      if (cands.empty()) {
        passed.push_back(bid.order_id);
        continue;
      }
      std::sort(cands.begin(), cands.end(), [](const Order& a, const Order& b) {
        if (a.price != b.price) return a.price < b.price;
        if (a.placed_at != b.placed_at) return a.placed_at < b.placed_at;
        return a.order_id < b.order_id;
      });
      const Order ask = pick(cands);
      const int price = bid.order_id > ask.order_id ? bid.price : ask.price;
      trades.push_back({r, bid.owner, ask.owner, bid.order_id, ask.order_id, price, bid.price - price});
      remove(bid.order_id);
      remove(ask.order_id);
    }
  }
  return trades;
}

}  // namespace vecon::testing
