#include "vecon/taxation.hpp"

#include <gtest/gtest.h>

#include "vecon/rng.hpp"

namespace vecon {
namespace {

// Independent oracle: sum income one slice at a time against explicit bracket bounds.
double slice_tax(double income, const std::vector<double>& thresholds, const std::vector<double>& rates) {
  std::vector<double> lo{0.0}, hi;
  for (double t : thresholds) {
    hi.push_back(t);
    lo.push_back(t);
  }
  hi.push_back(1e300);
  double tax = 0.0;
  for (std::size_t b = 0; b < rates.size(); ++b) {
    const double inside = std::max(0.0, std::min(income, hi[b]) - lo[b]);
    tax += rates[b] * inside;
  }
  return tax;
}

AgentState agent_with(double coin, double income) {
  AgentState a;
  a.coin = coin;
  a.period_income = income;
  return a;
}

TEST(MarginalTax, WorkedExample) {
  const std::vector<double> th{50, 100}, rates{0.10, 0.30, 0.50};
  EXPECT_DOUBLE_EQ(marginal_tax(130.0, th, rates), 35.0);
}

TEST(MarginalTax, ZeroRatesOweNothing) {
  const std::vector<double> th{50, 100}, rates{0, 0, 0};
  EXPECT_EQ(marginal_tax(1234.5, th, rates), 0.0);
}

TEST(MarginalTax, IncomeInsideFirstBracket) {
  const std::vector<double> th{50, 100}, rates{0.10, 0.30, 0.50};
  EXPECT_DOUBLE_EQ(slice_tax(40.0, th, rates), 4.0);
  EXPECT_DOUBLE_EQ(marginal_tax(40.0, th, rates), 4.0);
}

TEST(MarginalTax, NoThresholdsIsFlatTax) {
  const std::vector<double> th{}, rates{0.25};
  EXPECT_DOUBLE_EQ(marginal_tax(80.0, th, rates), 20.0);
}

TEST(MarginalTaxProperty, MatchesOracleMonotoneAndBounded) {
  Rng gen(11);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> th{gen.uniform(1, 100)};
    th.push_back(th[0] + gen.uniform(1, 200));
    std::vector<double> rates;
    double max_rate = 0.0;
    for (int b = 0; b < 3; ++b) {
      rates.push_back(kRateStep * static_cast<double>(gen.below(kRateLevels)));
      max_rate = std::max(max_rate, rates.back());
    }
    const double x = gen.uniform(0, 500);
    const double dx = gen.uniform(0, 100);
    const double t = marginal_tax(x, th, rates);
    EXPECT_NEAR(t, slice_tax(x, th, rates), 1e-9);
    EXPECT_GE(marginal_tax(x + dx, th, rates), t - 1e-12);
    EXPECT_LE(t, max_rate * x + 1e-9);
  }
}

TEST(CollectAndRedistribute, SingleAgentNetsZero) {
  TaxState tax({50, 100});
  tax.current_rates = {0.1, 0.3, 0.5};
  std::vector<AgentState> agents{agent_with(200.0, 130.0)};
  EXPECT_DOUBLE_EQ(collect_and_redistribute(agents, tax), 35.0);
  EXPECT_DOUBLE_EQ(agents[0].coin, 200.0);
  EXPECT_EQ(agents[0].period_income, 0.0);
}

TEST(CollectAndRedistribute, TwoAgentsSplitThePot) {
  TaxState tax({50, 100});
  tax.current_rates = {0.1, 0.3, 0.5};
  std::vector<AgentState> agents{agent_with(200.0, 130.0), agent_with(10.0, 0.0)};
  EXPECT_DOUBLE_EQ(collect_and_redistribute(agents, tax), 35.0);
  EXPECT_DOUBLE_EQ(agents[0].coin, 200.0 - 35.0 + 17.5);
  EXPECT_DOUBLE_EQ(agents[1].coin, 10.0 + 17.5);
}

TEST(CollectAndRedistribute, HundredAgentsEachReceiveOneHundredth) {
  TaxState tax({50, 100});
  tax.current_rates = {0.1, 0.3, 0.5};
  std::vector<AgentState> agents(100, agent_with(20.0, 0.0));
  agents[0] = agent_with(200.0, 130.0);
  collect_and_redistribute(agents, tax);
  for (std::size_t i = 1; i < agents.size(); ++i) EXPECT_DOUBLE_EQ(agents[i].coin, 20.35);
  EXPECT_DOUBLE_EQ(agents[0].coin, 200.0 - 35.0 + 0.35);
}

TEST(CollectAndRedistribute, TaxCappedAtInventoryCoin) {
  TaxState tax({50, 100});
  tax.current_rates = {1.0, 1.0, 1.0};
  std::vector<AgentState> agents{agent_with(5.0, 130.0), agent_with(0.0, 0.0)};
  agents[0].escrow_coin = 40.0;
  EXPECT_DOUBLE_EQ(collect_and_redistribute(agents, tax), 5.0);
  EXPECT_DOUBLE_EQ(agents[0].coin, 2.5);
  EXPECT_DOUBLE_EQ(agents[0].escrow_coin, 40.0);
}

TEST(CollectAndRedistributeProperty, ConservesTotalCoin) {
  Rng gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    TaxState tax({50, 100});
    for (auto& r : tax.current_rates) r = kRateStep * static_cast<double>(gen.below(kRateLevels));
    std::vector<AgentState> agents(1 + gen.below(100));
    double before = 0.0;
    for (auto& a : agents) {
      a = agent_with(gen.uniform(0, 300), gen.uniform(0, 300));
      before += a.coin;
    }
    collect_and_redistribute(agents, tax);
    double after = 0.0;
    for (const auto& a : agents) after += a.coin;
    EXPECT_NEAR(before, after, 1e-9);
  }
}

TEST(ApplyRateAction, ScalesLevels) {
  TaxState tax({50, 100});
  const std::vector<int> levels{2, 6, 10};
  apply_rate_action(tax, levels, 100);
  EXPECT_DOUBLE_EQ(tax.current_rates[0], 0.10);
  EXPECT_DOUBLE_EQ(tax.current_rates[1], 0.30);
  EXPECT_DOUBLE_EQ(tax.current_rates[2], 0.50);
  EXPECT_EQ(tax.period_start_step, 100);
}

TEST(ApplyRateAction, ExtremeLevels) {
  TaxState tax({50, 100});
  apply_rate_action(tax, std::vector<int>{20, 20, 20}, 0);
  for (double r : tax.current_rates) EXPECT_DOUBLE_EQ(r, 1.0);
  apply_rate_action(tax, std::vector<int>{0, 0, 0}, 0);
  for (double r : tax.current_rates) EXPECT_EQ(r, 0.0);
}

TEST(ApplyRateAction, RejectsOutOfRange) {
  TaxState tax({50, 100});
  EXPECT_THROW(apply_rate_action(tax, std::vector<int>{0, 21, 0}, 0), std::out_of_range);
  EXPECT_THROW(apply_rate_action(tax, std::vector<int>{-1, 0, 0}, 0), std::out_of_range);
  EXPECT_THROW(apply_rate_action(tax, std::vector<int>{0, 0}, 0), std::out_of_range);
}

}  // namespace
}  // namespace vecon
