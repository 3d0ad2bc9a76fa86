#include "vecon/harness/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "vecon/harness/metrics.hpp"
#include "vecon/market.hpp"
#include "vecon/observation.hpp"
#include "vecon/ppo/trainer.hpp"
#include "vecon/welfare.hpp"
#include "vecon/world.hpp"

namespace vecon::harness {

namespace {

using ppo::Real;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

EvalEpisode play(const EnvConfig& cfg, std::uint64_t skill_seed, std::uint64_t eval_seed,
                 const ppo::AgentNetworks& nets) {
  const int N = cfg.population_size, A = nets.pop_actions, B = cfg.num_brackets(), R = cfg.num_resources;
  if (nets.population != N || nets.pop_obs_size != ObservationLayout::population(cfg, nets.with_agent_id).size() ||
      A != ActionSpace(cfg).size())
    throw std::invalid_argument("checkpoint networks do not match the environment configuration");
  WorldState s = reset(cfg, skill_seed, Rng(eval_seed, 7).next_u64());
  Rng rng(eval_seed, 8);
  const ActionSpace space(cfg);

  nn::Matrix<Real> obs(N, nets.pop_obs_size), logits(N, A), logp, gov_obs(1, nets.gov_obs_size), gov_logp, x;
  nn::MaskMatrix mask(N, A);
  nn::Mlp<Real>::Activations act;
  std::vector<int> actions(static_cast<std::size_t>(N)), levels;
  std::vector<std::vector<std::int64_t>> kinds(static_cast<std::size_t>(N), std::vector<std::int64_t>(5, 0));
  std::vector<double> returns(static_cast<std::size_t>(N), 0.0);
  StepResult res;

  EvalEpisode ep;
  ep.eval_seed = eval_seed;
  while (s.timestep < cfg.episode_length) {
    const auto stats = market_stats(s.market);
    for (int i = 0; i < N; ++i) {
      build_pop_obs(s, cfg, i, nets.with_agent_id, stats, {obs.data() + i * obs.cols(), static_cast<std::size_t>(obs.cols())});
      action_mask(s, cfg, i, {mask.data() + i * A, static_cast<std::size_t>(A)});
    }
    for (std::size_t k = 0; k < nets.policies.size(); ++k) {
      const auto agents = nets.agents_of_policy(static_cast<int>(k));
      x.resize(static_cast<Eigen::Index>(agents.size()), obs.cols());
      for (std::size_t j = 0; j < agents.size(); ++j) x.row(static_cast<Eigen::Index>(j)) = obs.row(agents[j]);
      nets.policies[k].mlp.forward(x, act);
      for (std::size_t j = 0; j < agents.size(); ++j) logits.row(agents[j]) = act.out.row(static_cast<Eigen::Index>(j));
    }
    nn::masked_log_softmax<Real>(logits, &mask, nets.pop_heads, logp);
    for (int i = 0; i < N; ++i) {
      actions[static_cast<std::size_t>(i)] = nn::sample_head<Real>(logp.row(i), 0, A, rng);
      ++kinds[static_cast<std::size_t>(i)][static_cast<std::size_t>(space.decode(actions[static_cast<std::size_t>(i)]).kind)];
    }
    levels.clear();
    if (nets.has_government) {
      build_gov_obs(s, cfg, {gov_obs.data(), static_cast<std::size_t>(gov_obs.cols())});
      nets.gov_policy.mlp.forward(gov_obs, act);
      nn::masked_log_softmax<Real>(act.out, nullptr, nets.gov_heads, gov_logp);
      for (int h = 0; h < B; ++h) levels.push_back(nn::sample_head<Real>(gov_logp.row(0), h * kRateLevels, kRateLevels, rng));
    }
    step(cfg, s, actions, levels, res);
    for (int i = 0; i < N; ++i) returns[static_cast<std::size_t>(i)] += res.rewards[static_cast<std::size_t>(i)];
    std::vector<double> price(static_cast<std::size_t>(R), 0.0);
    std::vector<int> count(static_cast<std::size_t>(R), 0);
    for (const Trade& t : res.trades) {
      price[static_cast<std::size_t>(t.resource)] += t.price;
      ++count[static_cast<std::size_t>(t.resource)];
    }
    for (int r = 0; r < R; ++r)
      price[static_cast<std::size_t>(r)] = count[static_cast<std::size_t>(r)] ? price[static_cast<std::size_t>(r)] / count[static_cast<std::size_t>(r)] : kNaN;
    ep.price_series.push_back(std::move(price));
    ep.trade_series.push_back(std::move(count));
  }

  const auto coins = s.coins();
  const SocialWelfare w = social_welfare(coins, cfg.equality_weight);
  ep.productivity = w.productivity;
  ep.equality = w.equality;
  ep.gini = gini(coins);
  ep.gov_utility = w.utility;
  ep.pop_return_mean = std::accumulate(returns.begin(), returns.end(), 0.0) / N;
  ep.pop_return_median = median(returns);
  ep.tax_rates = s.tax.current_rates;
  for (const auto& k : kinds) {
    const double total = static_cast<double>(std::accumulate(k.begin(), k.end(), std::int64_t{0}));
    std::vector<double> f;
    for (auto c : k) f.push_back(static_cast<double>(c) / total);
    ep.action_fraction.push_back(std::move(f));
  }
  return ep;
}

}  // namespace

std::vector<EvalEpisode> evaluate(const EnvConfig& env, std::uint64_t run_seed, const ppo::AgentNetworks& nets,
                                  const EvalOptions& opts) {
  env.validate();
  const std::uint64_t skill_seed = ppo::RunSeeds::from(run_seed).skill;
  std::vector<EvalEpisode> out;
  for (int k = 0; k < opts.num_seeds; ++k)
    out.push_back(play(env, skill_seed, opts.first_seed + static_cast<std::uint64_t>(k), nets));
  return out;
}

void write_eval(const std::string& dir, const std::vector<EvalEpisode>& episodes, const std::string& config_hash,
                std::uint64_t seed) {
  std::ofstream ep(dir + "/eval_episodes.csv"), ac(dir + "/eval_actions.csv"), pr(dir + "/eval_prices.csv");
  if (!ep || !ac || !pr) throw std::runtime_error("cannot write evaluation files in " + dir);
  const std::string prefix = config_hash + "," + std::to_string(seed) + ",";
  const std::size_t B = episodes.empty() ? 0 : episodes.front().tax_rates.size();
  ep << "config_hash,seed,eval_seed,productivity,equality,gini,gov_utility,pop_return_mean,pop_return_median";
  for (std::size_t b = 0; b < B; ++b) ep << ",tax_rate_" << b;
  ep << '\n';
  ac << "config_hash,seed,eval_seed,agent,frac_gather,frac_craft,frac_buy,frac_sell,frac_noop\n";
  pr << "config_hash,seed,eval_seed,step,resource,trades,mean_price\n";
  for (const auto& e : episodes) {
    ep << prefix << e.eval_seed;
    for (double v : {e.productivity, e.equality, e.gini, e.gov_utility, e.pop_return_mean, e.pop_return_median})
      ep << ',' << format_float(v);
    for (double r : e.tax_rates) ep << ',' << format_float(r);
    ep << '\n';
    for (std::size_t i = 0; i < e.action_fraction.size(); ++i) {
      ac << prefix << e.eval_seed << ',' << i;
      for (double f : e.action_fraction[i]) ac << ',' << format_float(f);
      ac << '\n';
    }
    for (std::size_t t = 0; t < e.price_series.size(); ++t)
      for (std::size_t r = 0; r < e.price_series[t].size(); ++r)
        pr << prefix << e.eval_seed << ',' << t << ',' << r << ',' << e.trade_series[t][r] << ','
           << format_float(e.price_series[t][r]) << '\n';
  }
}

}  // namespace vecon::harness
