#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "vecon/agent.hpp"
#include "vecon/rng.hpp"

namespace vecon {

enum class Side : std::uint8_t { buy, sell };

/// Single-unit limit order. A bid escrows `price` coin, an ask escrows one unit.
struct Order {
  int owner = 0;
  int resource = 0;
  Side side = Side::buy;
  int price = 0;
  int placed_at = 0;
  std::uint64_t order_id = 0;

  friend bool operator==(const Order&, const Order&) = default;
};

struct ResourceBook {
  std::vector<Order> bids;  // kept in order_id order
  std::vector<Order> asks;  // kept in order_id order
  double last_price = 0.0;  // 0 until the first trade
  std::int64_t trade_count = 0;

  friend bool operator==(const ResourceBook&, const ResourceBook&) = default;
};

struct MarketState {
  std::vector<ResourceBook> books;
  std::uint64_t next_order_id = 0;

  MarketState() = default;
  explicit MarketState(int num_resources) : books(static_cast<std::size_t>(num_resources)) {}

  std::size_t live_order_count() const;

  friend bool operator==(const MarketState&, const MarketState&) = default;
};

struct Trade {
  int resource = 0;
  int buyer = 0;
  int seller = 0;
  std::uint64_t bid_id = 0;
  std::uint64_t ask_id = 0;
  int price = 0;
  int refund = 0;  // bid price minus trade price, returned to the buyer

  friend bool operator==(const Trade&, const Trade&) = default;
};

class MarketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Appends a new order and moves its collateral into the owner's escrow.
/// Does not charge labor; that belongs to the caller's action accounting.
/// Throws MarketError when the owner lacks funds/units or is at `max_active_orders`.
void place_order(MarketState& market, std::span<AgentState> agents, int agent, int resource,
                 Side side, int price, int step, int max_active_orders);

/// One matching round over every resource book. Trades are appended to `trades`.
///
/// Per resource, the best live bid (highest price, then oldest, then a uniform
/// draw among the remaining ties) is paired with the best crossing ask from a
/// different owner (lowest price, oldest, uniform draw). A bid with no crossing
/// ask from another owner is passed over for the rest of the round. Trades
/// execute at the price of whichever order was placed last.
void match_round(MarketState& market, std::span<AgentState> agents, Rng& rng,
                 std::vector<Trade>& trades);

std::vector<Trade> match_round(MarketState& market, std::span<AgentState> agents, Rng& rng);

/// Removes every order with `current_step - placed_at >= expiry` and refunds its escrow.
void expire_orders(MarketState& market, std::span<AgentState> agents, int current_step, int expiry);

struct BookStats {
  double highest_bid = 0.0;  // 0 when no bids
  double lowest_ask = 0.0;   // 0 when no asks
  int buy_count = 0;
  int sell_count = 0;
  double last_price = 0.0;

  friend bool operator==(const BookStats&, const BookStats&) = default;
};

std::vector<BookStats> market_stats(const MarketState& market);

}  // namespace vecon
