#include "vecon/ppo/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "vecon/market.hpp"
#include "vecon/observation.hpp"
#include "vecon/ppo/gae.hpp"
#include "vecon/ppo/loss.hpp"
#include "vecon/welfare.hpp"

namespace vecon::ppo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class M>
void gather_rows(const M& src, const std::vector<int>& rows, M& dst) {
  dst.resize(static_cast<Eigen::Index>(rows.size()), src.cols());
  for (std::size_t j = 0; j < rows.size(); ++j) dst.row(static_cast<Eigen::Index>(j)) = src.row(rows[j]);
}

template <class V>
void gather_entries(const V& src, const std::vector<int>& rows, V& dst) {
  dst.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) dst(static_cast<Eigen::Index>(j)) = src(rows[j]);
}

template <class T>
std::span<T> row_span(T* data, Eigen::Index cols, Eigen::Index row) {
  return {data + row * cols, static_cast<std::size_t>(cols)};
}

void shuffle(std::vector<int>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

double median_of(std::vector<double> v) {
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

/// Forward pass over `obs` restricted to `rows` (all rows when `all` is set),
/// writing outputs to the same rows of `out`.
void forward_rows(const nn::Mlp<Real>& net, const nn::Matrix<Real>& obs, const std::vector<int>& rows, bool all,
                  nn::Matrix<Real>& out, nn::Matrix<Real>& scratch, nn::Mlp<Real>::Activations& act) {
  if (all) {
    net.forward(obs, act);
    out = act.out;
    return;
  }
  gather_rows(obs, rows, scratch);
  net.forward(scratch, act);
  for (std::size_t j = 0; j < rows.size(); ++j) out.row(rows[j]) = act.out.row(static_cast<Eigen::Index>(j));
}

/// Local row lists (within one step block) for each network of a sharing map.
std::vector<std::vector<int>> block_rows(const std::vector<int>& owner, int networks, int E, int N) {
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(networks));
  for (int e = 0; e < E; ++e)
    for (int i = 0; i < N; ++i) rows[static_cast<std::size_t>(owner[static_cast<std::size_t>(i)])].push_back(e * N + i);
  return rows;
}

}  // namespace

RunSeeds RunSeeds::from(std::uint64_t seed) {
  return {Rng(seed, 101).next_u64(), Rng(seed, 102).next_u64(), Rng(seed, 103).next_u64()};
}

// ---------------------------------------------------------------- VecEnv

VecEnv::VecEnv(const EnvConfig& cfg, int num_envs, std::uint64_t run_seed)
    : cfg_(cfg), skill_seed_(RunSeeds::from(run_seed).skill) {
  cfg_.validate();
  const auto E = static_cast<std::size_t>(num_envs);
  envs_.resize(E);
  returns_.resize(E);
  gov_returns_.assign(E, 0.0);
  finished_.resize(E);
  for (std::size_t e = 0; e < E; ++e) episode_seeds_.emplace_back(run_seed, 1000 + e);
  for (int e = 0; e < num_envs; ++e) reset_env(e);
}

void VecEnv::reset_env(int e) {
  const auto k = static_cast<std::size_t>(e);
  envs_[k] = reset(cfg_, skill_seed_, episode_seeds_[k].next_u64());
  returns_[k].assign(static_cast<std::size_t>(cfg_.population_size), 0.0);
  gov_returns_[k] = 0.0;
}

bool VecEnv::step(int e, std::span<const int> actions, std::span<const int> gov_levels, StepResult& out) {
  const auto k = static_cast<std::size_t>(e);
  WorldState& s = envs_[k];
  vecon::step(cfg_, s, actions, gov_levels, out);
  for (std::size_t i = 0; i < out.rewards.size(); ++i) returns_[k][i] += out.rewards[i];
  gov_returns_[k] += out.gov_reward;
  if (!out.done) return false;
  EpisodeSummary sum;
  sum.env = e;
  sum.agent_returns = returns_[k];
  sum.gov_return = gov_returns_[k];
  const auto coins = s.coins();
  const SocialWelfare w = social_welfare(coins, cfg_.equality_weight);
  sum.productivity = w.productivity;
  sum.equality = w.equality;
  sum.gov_utility = w.utility;
  sum.tax_rates = s.tax.current_rates;
  finished_[k].push_back(std::move(sum));
  reset_env(e);
  return true;
}

std::vector<EpisodeSummary> VecEnv::take_finished() {
  std::vector<EpisodeSummary> out;
  for (auto& f : finished_) {
    for (auto& s : f) out.push_back(std::move(s));
    f.clear();
  }
  return out;
}

// ---------------------------------------------------------------- rollout

void collect_rollout(VecEnv& envs, const AgentNetworks& nets, const TrainConfig& cfg, Rng& rng, WorkerPool& pool,
                     RolloutBatch& b) {
  const EnvConfig& env_cfg = envs.config();
  const int T = cfg.rollout_length, E = envs.size(), N = envs.population();
  const int A = nets.pop_actions, OP = nets.pop_obs_size, OG = nets.gov_obs_size;
  const int B = env_cfg.num_brackets();
  const bool gov = nets.has_government;
  b.T = T;
  b.E = E;
  b.N = N;
  b.has_government = gov;
  const Eigen::Index P = static_cast<Eigen::Index>(T) * E * N;
  b.pop_obs.resize(P, OP);
  b.pop_mask.resize(P, A);
  b.pop_actions.resize(P, 1);
  b.pop_logp.resize(P);
  b.pop_values.resize(T, E * N);
  b.pop_rewards.resize(T, E * N);
  b.pop_dones.resize(T, E * N);
  b.pop_bootstrap.resize(E * N);
  b.gov_obs.resize(static_cast<Eigen::Index>(T) * E, OG);
  b.gov_actions.resize(static_cast<Eigen::Index>(T) * E, B);
  b.gov_logp.resize(static_cast<Eigen::Index>(T) * E);
  b.gov_values.resize(T, E);
  b.gov_rewards.resize(T, E);
  b.gov_dones.resize(T, E);
  b.gov_bootstrap.resize(E);

  RolloutStats& st = b.stats;
  st = RolloutStats{};
  st.action_kinds.assign(5, 0);
  st.price_sum.assign(static_cast<std::size_t>(env_cfg.num_resources), 0.0);
  st.trade_count.assign(static_cast<std::size_t>(env_cfg.num_resources), 0);
  st.gov_level_sum.assign(static_cast<std::size_t>(B), 0.0);

  const auto policy_rows = block_rows(nets.policy_of, static_cast<int>(nets.policies.size()), E, N);
  const auto value_rows = block_rows(nets.value_of, static_cast<int>(nets.values.size()), E, N);
  const ActionSpace space(env_cfg);

  nn::Matrix<Real> step_obs(E * N, OP), gov_step_obs(E, OG);
  nn::MaskMatrix step_mask(E * N, A);
  nn::Matrix<Real> logits(E * N, A), logp, values(E * N, 1), scratch, gov_logp, gov_values;
  nn::Mlp<Real>::Activations act;
  std::vector<StepResult> results(static_cast<std::size_t>(E));

  // Fills the step observation (and mask) buffers from the current env states.
  auto observe = [&](bool with_masks) {
    pool.parallel_for(static_cast<std::size_t>(E), [&](std::size_t ei) {
      const int e = static_cast<int>(ei);
      const WorldState& s = envs.env(e);
      const auto stats = market_stats(s.market);
      for (int i = 0; i < N; ++i) {
        const Eigen::Index r = static_cast<Eigen::Index>(e) * N + i;
        build_pop_obs(s, env_cfg, i, nets.with_agent_id, stats, row_span(step_obs.data(), OP, r));
        if (with_masks) action_mask(s, env_cfg, i, row_span(step_mask.data(), A, r));
      }
      if (gov) build_gov_obs(s, env_cfg, row_span(gov_step_obs.data(), OG, e));
    });
  };

  auto evaluate_values = [&] {
    for (std::size_t k = 0; k < nets.values.size(); ++k)
      forward_rows(nets.values[k].mlp, step_obs, value_rows[k], nets.values.size() == 1, values, scratch, act);
    if (gov) {
      nets.gov_value.mlp.forward(gov_step_obs, act);
      gov_values = act.out;
    }
  };

  for (int t = 0; t < T; ++t) {
    observe(true);
    const Eigen::Index base = static_cast<Eigen::Index>(t) * E * N;
    b.pop_obs.middleRows(base, E * N) = step_obs;
    b.pop_mask.middleRows(base, E * N) = step_mask;

    for (std::size_t k = 0; k < nets.policies.size(); ++k)
      forward_rows(nets.policies[k].mlp, step_obs, policy_rows[k], nets.policies.size() == 1, logits, scratch, act);
    nn::masked_log_softmax<Real>(logits, &step_mask, nets.pop_heads, logp);
    evaluate_values();

    for (Eigen::Index j = 0; j < E * N; ++j) {
      const int a = nn::sample_head<Real>(logp.row(j), 0, A, rng);
      b.pop_actions(base + j, 0) = a;
      b.pop_logp(base + j) = logp(j, a);
      b.pop_values(t, j) = values(j, 0);
      ++st.action_kinds[static_cast<std::size_t>(space.decode(a).kind)];
    }

    if (gov) {
      b.gov_obs.middleRows(static_cast<Eigen::Index>(t) * E, E) = gov_step_obs;
      nets.gov_policy.mlp.forward(gov_step_obs, act);
      nn::masked_log_softmax<Real>(act.out, nullptr, nets.gov_heads, gov_logp);
      for (int e = 0; e < E; ++e) {
        const Eigen::Index r = static_cast<Eigen::Index>(t) * E + e;
        Real lp = 0;
        for (int h = 0; h < B; ++h) {
          const int level = nn::sample_head<Real>(gov_logp.row(e), h * kRateLevels, kRateLevels, rng);
          b.gov_actions(r, h) = level;
          lp += gov_logp(e, h * kRateLevels + level);
          st.gov_level_sum[static_cast<std::size_t>(h)] += level;
        }
        b.gov_logp(r) = lp;
        b.gov_values(t, e) = gov_values(e, 0);
      }
      st.gov_samples += E;
    }

    pool.parallel_for(static_cast<std::size_t>(E), [&](std::size_t ei) {
      const int e = static_cast<int>(ei);
      const Eigen::Index r0 = base + static_cast<Eigen::Index>(e) * N;
      std::span<const int> acts(b.pop_actions.data() + r0, static_cast<std::size_t>(N));
      std::span<const int> levels;
      if (gov) levels = row_span<const int>(b.gov_actions.data(), B, static_cast<Eigen::Index>(t) * E + e);
      envs.step(e, acts, levels, results[ei]);
    });

    for (int e = 0; e < E; ++e) {
      const StepResult& res = results[static_cast<std::size_t>(e)];
      const Real done = res.done ? Real(1) : Real(0);
      for (int i = 0; i < N; ++i) {
        b.pop_rewards(t, e * N + i) = static_cast<Real>(res.rewards[static_cast<std::size_t>(i)]);
        b.pop_dones(t, e * N + i) = done;
      }
      b.gov_rewards(t, e) = static_cast<Real>(res.gov_reward);
      b.gov_dones(t, e) = done;
      for (const Trade& tr : res.trades) {
        st.price_sum[static_cast<std::size_t>(tr.resource)] += tr.price;
        ++st.trade_count[static_cast<std::size_t>(tr.resource)];
      }
    }
  }

  observe(false);
  evaluate_values();
  for (Eigen::Index j = 0; j < E * N; ++j) b.pop_bootstrap(j) = values(j, 0);
  if (gov)
    for (int e = 0; e < E; ++e) b.gov_bootstrap(e) = gov_values(e, 0);
  st.episodes = envs.take_finished();
}

// ---------------------------------------------------------------- update

namespace {

struct Accum {
  double policy = 0, value = 0, entropy = 0, kl = 0, clip = 0;
  int policy_batches = 0, value_batches = 0;
};

struct PolicyData {
  const nn::Matrix<Real>* obs;
  const nn::MaskMatrix* mask;  // may be null
  const IntMatrix* actions;
  const nn::Vector<Real>* old_logp;
  const Real* advantages;  // indexed by row
  nn::HeadLayout heads;
};

struct ValueData {
  const nn::Matrix<Real>* obs;
  const Real* old_values;  // indexed by row
  const Real* returns;
};

void check_finite(double v, const std::string& what, const std::string& net) {
  if (!std::isfinite(v)) throw TrainingError("non-finite " + what + " in " + net + " (value " + std::to_string(v) + ")");
}

std::vector<std::pair<std::size_t, std::size_t>> split(std::size_t n, int parts) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t p = static_cast<std::size_t>(parts);
  std::size_t begin = 0;
  for (std::size_t j = 0; j < p; ++j) {
    const std::size_t len = n / p + (j < n % p ? 1 : 0);
    if (len > 0) out.emplace_back(begin, begin + len);
    begin += len;
  }
  return out;
}

void policy_epoch(Network& net, const PolicyData& d, std::vector<int>& rows, const TrainConfig& cfg, double lr,
                  double ent_coef, const nn::AdamConfig& adam, Rng& rng, Accum& acc, const std::string& name) {
  shuffle(rows, rng);
  nn::Matrix<Real> x;
  nn::MaskMatrix m;
  IntMatrix a;
  nn::Vector<Real> old_lp, adv;
  nn::Mlp<Real>::Activations act;
  nn::Vector<Real> grad(net.num_params());
  for (const auto& [lo, hi] : split(rows.size(), cfg.num_minibatches)) {
    const std::vector<int> mb(rows.begin() + static_cast<std::ptrdiff_t>(lo), rows.begin() + static_cast<std::ptrdiff_t>(hi));
    gather_rows(*d.obs, mb, x);
    if (d.mask) gather_rows(*d.mask, mb, m);
    gather_rows(*d.actions, mb, a);
    gather_entries(*d.old_logp, mb, old_lp);
    adv.resize(static_cast<Eigen::Index>(mb.size()));
    for (std::size_t j = 0; j < mb.size(); ++j) adv(static_cast<Eigen::Index>(j)) = d.advantages[mb[j]];
    if (cfg.normalize_advantages) normalize_advantages(adv);
    net.mlp.forward(x, act);
    const auto loss = policy_loss<Real>(act.out, d.mask ? &m : nullptr, d.heads, a, old_lp, adv, cfg.clip_eps, ent_coef);
    check_finite(loss.total, "policy loss", name);
    grad.setZero();
    net.mlp.backward(x, act, loss.d_logits, grad);
    nn::adam_step(net.mlp.params(), grad, net.opt, lr, adam);
    acc.policy += loss.surrogate;
    acc.entropy += loss.entropy;
    acc.kl += loss.approx_kl;
    acc.clip += loss.clip_fraction;
    ++acc.policy_batches;
  }
}

void value_epoch(Network& net, const ValueData& d, std::vector<int>& rows, const TrainConfig& cfg, double lr,
                 const nn::AdamConfig& adam, Rng& rng, Accum& acc, const std::string& name) {
  shuffle(rows, rng);
  nn::Matrix<Real> x;
  nn::Vector<Real> old_v, target;
  nn::Mlp<Real>::Activations act;
  nn::Vector<Real> grad(net.num_params());
  for (const auto& [lo, hi] : split(rows.size(), cfg.num_minibatches)) {
    const std::vector<int> mb(rows.begin() + static_cast<std::ptrdiff_t>(lo), rows.begin() + static_cast<std::ptrdiff_t>(hi));
    const auto n = static_cast<Eigen::Index>(mb.size());
    gather_rows(*d.obs, mb, x);
    old_v.resize(n);
    target.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      old_v(j) = d.old_values[mb[static_cast<std::size_t>(j)]];
      target(j) = d.returns[mb[static_cast<std::size_t>(j)]];
    }
    net.mlp.forward(x, act);
    const nn::Vector<Real> v = act.out.col(0);
    const auto loss = value_loss<Real>(v, old_v, target, cfg.value_clip, cfg.value_coef);
    check_finite(loss.total, "value loss", name);
    grad.setZero();
    const nn::Matrix<Real> d_out = loss.d_values;
    net.mlp.backward(x, act, d_out, grad);
    nn::adam_step(net.mlp.params(), grad, net.opt, lr, adam);
    acc.value += loss.total;
    ++acc.value_batches;
  }
}

}  // namespace

UpdateStats ppo_update(AgentNetworks& nets, const RolloutBatch& b, const TrainConfig& cfg, double progress, Rng& rng) {
  UpdateStats out;
  out.learning_rate = cfg.learning_rate_at(progress);
  out.entropy_coef = cfg.entropy_coef_at(progress);
  nn::AdamConfig adam{cfg.adam_beta1, cfg.adam_beta2, cfg.adam_eps, cfg.max_grad_norm};

  nn::Matrix<Real> adv, ret, gov_adv, gov_ret;
  compute_gae<Real>(b.pop_rewards, b.pop_values, b.pop_dones, b.pop_bootstrap, cfg.gamma, cfg.gae_lambda, adv, ret);
  if (b.has_government)
    compute_gae<Real>(b.gov_rewards, b.gov_values, b.gov_dones, b.gov_bootstrap, cfg.gamma, cfg.gae_lambda, gov_adv,
                      gov_ret);

  // Row lists per network over the whole batch.
  auto rows_for = [&](const std::vector<int>& owner, std::size_t k) {
    std::vector<int> rows;
    for (int r = 0; r < b.pop_rows(); ++r)
      if (owner[static_cast<std::size_t>(r % b.N)] == static_cast<int>(k)) rows.push_back(r);
    return rows;
  };
  std::vector<std::vector<int>> policy_rows, value_rows;
  for (std::size_t k = 0; k < nets.policies.size(); ++k) policy_rows.push_back(rows_for(nets.policy_of, k));
  for (std::size_t k = 0; k < nets.values.size(); ++k) value_rows.push_back(rows_for(nets.value_of, k));
  std::vector<int> gov_rows(static_cast<std::size_t>(b.gov_rows()));
  std::iota(gov_rows.begin(), gov_rows.end(), 0);

  const PolicyData pop_pd{&b.pop_obs, &b.pop_mask, &b.pop_actions, &b.pop_logp, adv.data(), nets.pop_heads};
  const ValueData pop_vd{&b.pop_obs, b.pop_values.data(), ret.data()};
  const PolicyData gov_pd{&b.gov_obs, nullptr, &b.gov_actions, &b.gov_logp, gov_adv.data(), nets.gov_heads};
  const ValueData gov_vd{&b.gov_obs, b.gov_values.data(), gov_ret.data()};

  Accum pop, gov;
  for (int epoch = 0; epoch < cfg.num_epochs; ++epoch) {
    for (std::size_t k = 0; k < nets.policies.size(); ++k)
      policy_epoch(nets.policies[k], pop_pd, policy_rows[k], cfg, out.learning_rate, out.entropy_coef, adam, rng, pop,
                   "population policy " + std::to_string(k));
    for (std::size_t k = 0; k < nets.values.size(); ++k)
      value_epoch(nets.values[k], pop_vd, value_rows[k], cfg, out.learning_rate, adam, rng, pop,
                  "population value " + std::to_string(k));
    if (b.has_government) {
      policy_epoch(nets.gov_policy, gov_pd, gov_rows, cfg, out.learning_rate, out.entropy_coef, adam, rng, gov,
                   "government policy");
      value_epoch(nets.gov_value, gov_vd, gov_rows, cfg, out.learning_rate, adam, rng, gov, "government value");
    }
  }

  auto mean = [](double sum, int n) { return n > 0 ? sum / n : kNaN; };
  out.policy_loss = mean(pop.policy, pop.policy_batches);
  out.value_loss = mean(pop.value, pop.value_batches);
  out.entropy = mean(pop.entropy, pop.policy_batches);
  out.approx_kl = mean(pop.kl, pop.policy_batches);
  out.clip_fraction = mean(pop.clip, pop.policy_batches);
  out.gov_policy_loss = mean(gov.policy, gov.policy_batches);
  out.gov_value_loss = mean(gov.value, gov.value_batches);
  out.gov_entropy = mean(gov.entropy, gov.policy_batches);
  return out;
}

// ---------------------------------------------------------------- train

TrainResult train(const EnvConfig& env, const TrainConfig& cfg, std::uint64_t seed, const MetricsSink& metrics,
                  const CheckpointSink& checkpoint) {
  env.validate();
  cfg.validate();
  const RunSeeds seeds = RunSeeds::from(seed);
  Rng init_rng(seeds.init);
  Rng rng(seeds.learn);
  TrainResult result;
  result.networks = build_sharing_mode(env, cfg, init_rng);
  AgentNetworks& nets = result.networks;
  VecEnv envs(env, cfg.num_envs, seed);
  WorkerPool pool(cfg.num_workers);
  RolloutBatch batch;

  const int updates = static_cast<int>(cfg.num_updates());
  const int B = env.num_brackets();
  MetricsRecord rec;
  rec.pop_return_mean = rec.pop_return_median = kNaN;
  rec.productivity = rec.equality = rec.gov_utility = rec.gov_return = kNaN;

  for (int u = 0; u < updates; ++u) {
    const auto t0 = std::chrono::steady_clock::now();
    const double progress = static_cast<double>(u) / updates;
    collect_rollout(envs, nets, cfg, rng, pool, batch);
    rec.losses = ppo_update(nets, batch, cfg, progress, rng);
    result.global_step += cfg.steps_per_update();
    result.updates = u + 1;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const RolloutStats& st = batch.stats;
    rec.update = u + 1;
    rec.global_step = result.global_step;
    if (!st.episodes.empty()) {
      std::vector<double> returns;
      double prod = 0, eq = 0, ug = 0, gr = 0;
      for (const auto& ep : st.episodes) {
        returns.insert(returns.end(), ep.agent_returns.begin(), ep.agent_returns.end());
        prod += ep.productivity;
        eq += ep.equality;
        ug += ep.gov_utility;
        gr += ep.gov_return;
      }
      const double k = static_cast<double>(st.episodes.size());
      rec.episodes += static_cast<std::int64_t>(st.episodes.size());
      rec.pop_return_mean = std::accumulate(returns.begin(), returns.end(), 0.0) / static_cast<double>(returns.size());
      rec.pop_return_median = median_of(returns);
      rec.productivity = prod / k;
      rec.equality = eq / k;
      rec.gov_utility = ug / k;
      rec.gov_return = gr / k;
    }
    rec.tax_rates.assign(static_cast<std::size_t>(B), 0.0);
    for (int e = 0; e < envs.size(); ++e)
      for (int h = 0; h < B; ++h)
        rec.tax_rates[static_cast<std::size_t>(h)] += envs.env(e).tax.current_rates[static_cast<std::size_t>(h)] / envs.size();
    rec.trade_price.resize(st.price_sum.size());
    for (std::size_t r = 0; r < st.price_sum.size(); ++r)
      rec.trade_price[r] = st.trade_count[r] > 0 ? st.price_sum[r] / static_cast<double>(st.trade_count[r]) : kNaN;
    const double total_actions = static_cast<double>(std::accumulate(st.action_kinds.begin(), st.action_kinds.end(), std::int64_t{0}));
    rec.action_fraction.resize(st.action_kinds.size());
    for (std::size_t k = 0; k < st.action_kinds.size(); ++k)
      rec.action_fraction[k] = static_cast<double>(st.action_kinds[k]) / total_actions;
    rec.gov_level_mean.resize(static_cast<std::size_t>(B));
    for (int h = 0; h < B; ++h)
      rec.gov_level_mean[static_cast<std::size_t>(h)] =
          st.gov_samples > 0 ? st.gov_level_sum[static_cast<std::size_t>(h)] / static_cast<double>(st.gov_samples) : kNaN;
    rec.steps_per_sec = secs > 0 ? static_cast<double>(cfg.steps_per_update()) / secs : 0.0;
    if (metrics) metrics(rec);

    const bool last = u + 1 == updates;
    if (checkpoint && !last && cfg.checkpoint_interval > 0 && (u + 1) % cfg.checkpoint_interval == 0)
      checkpoint(nets, u + 1, result.global_step);
  }
  if (checkpoint) checkpoint(nets, result.updates, result.global_step);
  return result;
}

}  // namespace vecon::ppo
