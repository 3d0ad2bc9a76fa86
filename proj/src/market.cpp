#include "vecon/market.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace vecon {

std::size_t MarketState::live_order_count() const {
  std::size_t n = 0;
  for (const auto& b : books) n += b.bids.size() + b.asks.size();
  return n;
}

void place_order(MarketState& market, std::span<AgentState> agents, int agent, int resource,
                 Side side, int price, int step, int max_active_orders) {
  AgentState& a = agents[static_cast<std::size_t>(agent)];
  if (a.live_orders >= max_active_orders)
    throw MarketError("agent " + std::to_string(agent) + " is at the active order cap");
  auto& book = market.books.at(static_cast<std::size_t>(resource));
  if (side == Side::buy) {
    if (a.coin < price)
      throw MarketError("agent " + std::to_string(agent) + " cannot fund a bid at " +
                        std::to_string(price));
    a.coin -= price;
    a.escrow_coin += price;
  } else {
    auto r = static_cast<std::size_t>(resource);
    if (a.resources[r] < 1)
      throw MarketError("agent " + std::to_string(agent) + " holds no unit of resource " +
                        std::to_string(resource));
    a.resources[r] -= 1;
    a.escrow_resources[r] += 1;
  }
  ++a.live_orders;
  Order o{agent, resource, side, price, step, market.next_order_id++};
  (side == Side::buy ? book.bids : book.asks).push_back(o);
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Index of the best order among those passing `eligible`. `better_price(a, b)`
// is true when price a beats price b. Ties on price and age are resolved by a
// single uniform draw over the tied orders in storage (order_id) order.
template <class Eligible, class BetterPrice>
std::size_t pick_best(const std::vector<Order>& orders, Eligible eligible, BetterPrice better_price,
                      Rng& rng) {
  std::size_t best = kNone;
  std::size_t ties = 0;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const Order& o = orders[i];
    if (!eligible(o)) continue;
    if (best == kNone || better_price(o.price, orders[best].price) ||
        (o.price == orders[best].price && o.placed_at < orders[best].placed_at)) {
      best = i;
      ties = 1;
    } else if (o.price == orders[best].price && o.placed_at == orders[best].placed_at) {
      ++ties;
    }
  }
  if (ties <= 1) return best;
  std::uint64_t k = rng.below(ties);
  const int price = orders[best].price;
  const int placed = orders[best].placed_at;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const Order& o = orders[i];
    if (eligible(o) && o.price == price && o.placed_at == placed) {
      if (k == 0) return i;
      --k;
    }
  }
  return best;
}

void match_book(ResourceBook& book, std::span<AgentState> agents, Rng& rng,
                std::vector<Trade>& trades) {
  std::vector<std::uint64_t> passed;  // bids with no counterparty this round
  auto not_passed = [&](const Order& o) {
    return std::find(passed.begin(), passed.end(), o.order_id) == passed.end();
  };
  const auto higher = [](int a, int b) { return a > b; };
  const auto lower = [](int a, int b) { return a < b; };

  while (!book.bids.empty() && !book.asks.empty()) {
    int lowest_ask = std::numeric_limits<int>::max();
    for (const Order& o : book.asks) lowest_ask = std::min(lowest_ask, o.price);

    int highest_bid = std::numeric_limits<int>::min();
    for (const Order& o : book.bids)
      if (not_passed(o)) highest_bid = std::max(highest_bid, o.price);
    if (highest_bid < lowest_ask) break;  // also covers every bid being passed over

    const std::size_t bi = pick_best(book.bids, not_passed, higher, rng);
    const Order bid = book.bids[bi];

    const std::size_t ai = pick_best(
        book.asks, [&](const Order& o) { return o.owner != bid.owner && o.price <= bid.price; },
        lower, rng);
    if (ai == kNone) {
      passed.push_back(bid.order_id);
      continue;
    }
    const Order ask = book.asks[ai];

    const int price = bid.order_id > ask.order_id ? bid.price : ask.price;
    const int refund = bid.price - price;
    const auto r = static_cast<std::size_t>(bid.resource);
    AgentState& buyer = agents[static_cast<std::size_t>(bid.owner)];
    AgentState& seller = agents[static_cast<std::size_t>(ask.owner)];
    buyer.escrow_coin -= bid.price;
    buyer.coin += refund;
    buyer.resources[r] += 1;
    buyer.live_orders -= 1;
    seller.escrow_resources[r] -= 1;
    seller.coin += price;
    seller.period_income += price;
    seller.live_orders -= 1;

    book.bids.erase(book.bids.begin() + static_cast<std::ptrdiff_t>(bi));
    book.asks.erase(book.asks.begin() + static_cast<std::ptrdiff_t>(ai));
    book.last_price = price;
    ++book.trade_count;
    trades.push_back({bid.resource, bid.owner, ask.owner, bid.order_id, ask.order_id, price, refund});
  }
}

}  // namespace

void match_round(MarketState& market, std::span<AgentState> agents, Rng& rng,
                 std::vector<Trade>& trades) {
  for (auto& book : market.books) match_book(book, agents, rng, trades);
}

std::vector<Trade> match_round(MarketState& market, std::span<AgentState> agents, Rng& rng) {
  std::vector<Trade> trades;
  match_round(market, agents, rng, trades);
  return trades;
}

void expire_orders(MarketState& market, std::span<AgentState> agents, int current_step, int expiry) {
  for (auto& book : market.books) {
    std::erase_if(book.bids, [&](const Order& o) {
      if (current_step - o.placed_at < expiry) return false;
      AgentState& a = agents[static_cast<std::size_t>(o.owner)];
      a.escrow_coin -= o.price;
      a.coin += o.price;
      --a.live_orders;
      return true;
    });
    std::erase_if(book.asks, [&](const Order& o) {
      if (current_step - o.placed_at < expiry) return false;
      AgentState& a = agents[static_cast<std::size_t>(o.owner)];
      const auto r = static_cast<std::size_t>(o.resource);
      a.escrow_resources[r] -= 1;
      a.resources[r] += 1;
      --a.live_orders;
      return true;
    });
  }
}

std::vector<BookStats> market_stats(const MarketState& market) {
  std::vector<BookStats> out;
  out.reserve(market.books.size());
  for (const auto& book : market.books) {
    BookStats s;
    for (const Order& o : book.bids) s.highest_bid = std::max(s.highest_bid, double(o.price));
    if (!book.asks.empty()) {
      s.lowest_ask = std::numeric_limits<double>::max();
      for (const Order& o : book.asks) s.lowest_ask = std::min(s.lowest_ask, double(o.price));
    }
    s.buy_count = static_cast<int>(book.bids.size());
    s.sell_count = static_cast<int>(book.asks.size());
    s.last_price = book.last_price;
    out.push_back(s);
  }
  return out;
}

}  // namespace vecon
