#include "vecon/welfare.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "vecon/rng.hpp"

namespace vecon {
namespace {

double pairwise_gini(const std::vector<double>& c) {
  const double n = static_cast<double>(c.size());
  double total = 0.0, diff = 0.0;
  for (double x : c) total += x;
  for (double x : c)
    for (double y : c) diff += std::abs(x - y);
  if (c.size() <= 1 || total == 0.0) return 0.0;
  return diff / (2.0 * n * total);
}

TEST(IsoelasticUtility, UnitCoinLeavesOnlyLabor) { EXPECT_DOUBLE_EQ(isoelastic_utility(1.0, 0.5, 0.27), -0.5); }

TEST(IsoelasticUtility, ZeroCoin) {
  EXPECT_NEAR(isoelastic_utility(0.0, 0.0, 0.27), -1.3698630136986301, 1e-12);
}

TEST(IsoelasticUtility, StartingCoin) {
  // 40-digit evaluation of (15^0.73 - 1) / 0.73.
  EXPECT_NEAR(isoelastic_utility(15.0, 0.0, 0.27), 8.520762509117934608, 1e-9);
}

TEST(IsoelasticUtility, RejectsEtaOne) { EXPECT_THROW(isoelastic_utility(2.0, 0.0, 1.0), std::invalid_argument); }

TEST(IsoelasticUtilityProperty, IncreasingAndConcave) {
  Rng gen(3);
  for (int i = 0; i < 500; ++i) {
    const double c = gen.uniform(0.01, 500.0);
    const double h = 0.05 * c;
    const double eta = gen.uniform(0.05, 3.0);
    if (std::abs(eta - 1.0) < 1e-3) continue;
    const double lo = isoelastic_utility(c - h / 2, 0.0, eta);
    const double mid = isoelastic_utility(c, 0.0, eta);
    const double hi = isoelastic_utility(c + h / 2, 0.0, eta);
    EXPECT_GT(hi, lo);
    EXPECT_LT(hi - 2 * mid + lo, 0.0) << "c=" << c << " eta=" << eta;
  }
}

TEST(Gini, PerfectEquality) { EXPECT_EQ(gini(std::vector<double>{10, 10, 10}), 0.0); }
TEST(Gini, TwoAgents) { EXPECT_DOUBLE_EQ(gini(std::vector<double>{0, 1}), 0.5); }
TEST(Gini, AllZero) { EXPECT_EQ(gini(std::vector<double>{0, 0, 0}), 0.0); }
TEST(Gini, SingleAgent) { EXPECT_EQ(gini(std::vector<double>{7}), 0.0); }

TEST(GiniProperty, MatchesPairwiseScaleAndPermutationInvariant) {
  Rng gen(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> c(1 + gen.below(100));
    for (auto& x : c) x = gen.below(4) == 0 ? 0.0 : gen.uniform(0, 200);
    const double g = gini(c);
    EXPECT_NEAR(g, pairwise_gini(c), 1e-12);
    EXPECT_GE(g, 0.0);
    EXPECT_LE(g, 1.0);

    std::vector<double> scaled = c;
    const double alpha = gen.uniform(0.1, 50.0);
    for (auto& x : scaled) x *= alpha;
    EXPECT_NEAR(gini(scaled), g, 1e-12);

    std::vector<double> perm = c;
    std::reverse(perm.begin(), perm.end());
    if (perm.size() > 2) std::swap(perm[0], perm[perm.size() / 2]);
    EXPECT_EQ(gini(perm), g);
  }
}

TEST(SocialWelfare, EqualCoins) {
  const auto w = social_welfare(std::vector<double>{10, 10}, 1.0);
  EXPECT_DOUBLE_EQ(w.equality, 1.0);
  EXPECT_DOUBLE_EQ(w.productivity, 20.0);
  EXPECT_DOUBLE_EQ(w.utility, 20.0);
}

TEST(SocialWelfare, ZeroWeightIsProductivity) {
  const std::vector<double> c{1, 5, 30};
  const auto w = social_welfare(c, 0.0);
  EXPECT_DOUBLE_EQ(w.equality, 1.0);
  EXPECT_DOUBLE_EQ(w.utility, 36.0);
}

TEST(SocialWelfare, UnequalPair) {
  const auto w = social_welfare(std::vector<double>{0, 1}, 1.0);
  EXPECT_DOUBLE_EQ(w.equality, 0.5);
  EXPECT_DOUBLE_EQ(w.productivity, 1.0);
  EXPECT_DOUBLE_EQ(w.utility, 0.5);
}

TEST(SocialWelfareProperty, UnitWeightIsOneMinusGiniTimesTotal) {
  Rng gen(23);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> c(1 + gen.below(50));
    double total = 0.0;
    for (auto& x : c) total += (x = gen.uniform(0, 100));
    EXPECT_NEAR(social_welfare(c, 1.0).utility, (1.0 - pairwise_gini(c)) * total, 1e-9);
  }
}

TEST(RewardDelta, Differences) {
  EXPECT_EQ(reward_delta(3.0, 3.0), 0.0);
  EXPECT_DOUBLE_EQ(reward_delta(isoelastic_utility(15, 0, 0.27), isoelastic_utility(15, 1, 0.27)), -1.0);
  EXPECT_EQ(reward_delta(20.0, 24.0), 4.0);
}

}  // namespace
}  // namespace vecon
