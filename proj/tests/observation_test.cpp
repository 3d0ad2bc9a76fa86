#include "vecon/observation.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "support/fuzz.hpp"

namespace vecon {
namespace {

int expected_pop_length(const EnvConfig& cfg, bool id) {
  const int R = cfg.num_resources;
  // coin, escrow_coin, craft_skill, labor, period_income, two progress timers
  const int scalars = 7;
  const int per_resource = 3 + 5;  // resources, escrow, gather skill + market stats
  return scalars + per_resource * R + cfg.num_brackets() + (id ? cfg.population_size : 0);
}

TEST(PopObservation, FreshResetFields) {
  const EnvConfig cfg;
  const auto s = reset(cfg, 1);
  const auto obs = build_pop_obs(s, cfg, 0);
  const auto layout = ObservationLayout::population(cfg, false);
  EXPECT_FLOAT_EQ(obs[static_cast<std::size_t>(layout.field("coin").offset)], static_cast<float>(15 * kCoinScale));
  const auto res = layout.field("resources");
  for (int k = 0; k < res.width; ++k) EXPECT_EQ(obs[static_cast<std::size_t>(res.offset + k)], 0.0f);
  const auto esc = layout.field("escrow_resources");
  for (int k = 0; k < esc.width; ++k) EXPECT_EQ(obs[static_cast<std::size_t>(esc.offset + k)], 0.0f);
}

TEST(PopObservation, LengthFollowsLayout) {
  EnvConfig cfg;
  cfg.num_resources = 2;
  EXPECT_EQ(ObservationLayout::population(cfg, false).size(), expected_pop_length(cfg, false));
  EXPECT_EQ(ObservationLayout::population(cfg, false).size(), 26);
  cfg.num_resources = 12;
  cfg.population_size = 10;
  EXPECT_EQ(ObservationLayout::population(cfg, true).size(), expected_pop_length(cfg, true));
}

TEST(PopObservation, AgentIdOneHotSuffix) {
  EnvConfig cfg;
  cfg.population_size = 4;
  const auto s = reset(cfg, 2);
  const auto plain = build_pop_obs(s, cfg, 3, false);
  const auto with_id = build_pop_obs(s, cfg, 3, true);
  ASSERT_EQ(with_id.size(), plain.size() + 4);
  for (std::size_t k = 0; k < plain.size(); ++k) EXPECT_EQ(with_id[k], plain[k]);
  const std::vector<float> tail(with_id.end() - 4, with_id.end());
  EXPECT_EQ(tail, (std::vector<float>{0, 0, 0, 1}));
}

TEST(PopObservation, SchemaListsEveryField) {
  const EnvConfig cfg;
  const auto layout = ObservationLayout::population(cfg, false);
  const auto schema = layout.schema();
  EXPECT_NE(schema.find("coin 0 1"), std::string::npos);
  EXPECT_NE(schema.find("market 11 10"), std::string::npos);
  int covered = 0;
  for (const auto& f : layout.fields()) {
    EXPECT_EQ(f.offset, covered);
    covered += f.width;
  }
  EXPECT_EQ(covered, layout.size());
}

TEST(PopulationStat, OddCount) {
  const auto s = population_stat(std::vector<double>{1, 2, 3});
  EXPECT_DOUBLE_EQ(s.mean, 2.0);
  EXPECT_DOUBLE_EQ(s.median, 2.0);
  EXPECT_NEAR(s.stddev, std::sqrt(2.0 / 3.0), 1e-15);
}

TEST(PopulationStat, EvenCountMedianIsMidpoint) {
  EXPECT_DOUBLE_EQ(population_stat(std::vector<double>{4, 1, 3, 2}).median, 2.5);
}

TEST(GovObservation, CoinStatistics) {
  EnvConfig cfg;
  cfg.population_size = 3;
  auto s = reset(cfg, 0);
  s.agents[0].coin = 1;
  s.agents[1].coin = 2;
  s.agents[2].coin = 3;
  const auto obs = build_gov_obs(s, cfg);
  const auto layout = ObservationLayout::government(cfg);
  ASSERT_EQ(static_cast<int>(obs.size()), layout.size());
  EXPECT_FLOAT_EQ(obs[static_cast<std::size_t>(layout.field("mean_coin").offset)], 0.02f);
  EXPECT_FLOAT_EQ(obs[static_cast<std::size_t>(layout.field("median_coin").offset)], 0.02f);
  EXPECT_FLOAT_EQ(obs[static_cast<std::size_t>(layout.field("std_coin").offset)],
                  static_cast<float>(std::sqrt(2.0 / 3.0) / 100.0));
}

TEST(GovObservationProperty, InvariantUnderAgentPermutation) {
  EnvConfig cfg;
  cfg.population_size = 6;
  cfg.episode_length = 120;
  auto s = reset(cfg, 4);
  Rng policy(9);
  for (int t = 0; t < 100; ++t) step(cfg, s, testing::random_valid_actions(s, cfg, policy));
  auto permuted = s;
  std::reverse(permuted.agents.begin(), permuted.agents.end());
  std::swap(permuted.agents[1], permuted.agents[4]);
  EXPECT_EQ(build_gov_obs(s, cfg), build_gov_obs(permuted, cfg));
}

TEST(ObservationProperty, FiniteAndBoundedOnFuzzedEpisode) {
  EnvConfig cfg;
  cfg.population_size = 8;
  auto s = reset(cfg, 6);
  Rng policy(1);
  const int pop_len = ObservationLayout::population(cfg, true).size();
  const int gov_len = ObservationLayout::government(cfg).size();
  for (int t = 0; t < cfg.episode_length; ++t) {
    if (t % 10 == 0) {
      for (int i = 0; i < cfg.population_size; ++i) {
        const auto o = build_pop_obs(s, cfg, i, true);
        ASSERT_EQ(static_cast<int>(o.size()), pop_len);
        for (float x : o) {
          ASSERT_TRUE(std::isfinite(x));
          ASSERT_LE(std::abs(x), 1000.0f);
        }
      }
      const auto g = build_gov_obs(s, cfg);
      ASSERT_EQ(static_cast<int>(g.size()), gov_len);
      for (float x : g) ASSERT_TRUE(std::isfinite(x));
    }
    step(cfg, s, testing::random_valid_actions(s, cfg, policy), testing::random_rate_levels(cfg, policy));
  }
}

}  // namespace
}  // namespace vecon
