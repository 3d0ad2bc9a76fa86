#pragma once

#include <vector>

namespace vecon {

struct AgentState {
  double coin = 0.0;
  std::vector<int> resources;
  double escrow_coin = 0.0;
  std::vector<int> escrow_resources;
  std::vector<double> gather_skill;
  double craft_skill = 0.0;
  double labor = 0.0;
  double period_income = 0.0;  // taxable inflow since the last collection
  int live_orders = 0;

  double total_coin() const { return coin + escrow_coin; }

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

}  // namespace vecon
