#include "vecon/world.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "vecon/welfare.hpp"

namespace vecon {

double WorldState::total_coin() const {
  double t = 0.0;
  for (const auto& a : agents) t += a.total_coin();
  return t;
}

std::vector<double> WorldState::coins() const {
  std::vector<double> c;
  c.reserve(agents.size());
  for (const auto& a : agents) c.push_back(a.total_coin());
  return c;
}

namespace {

void init_skills(const EnvConfig& cfg, std::vector<AgentState>& agents, Rng& rng) {
  const auto n = agents.size();
  const auto r = static_cast<std::size_t>(cfg.num_resources);
  // Column j < r is gather skill j, column r is craft skill.
  auto skill = [&](std::size_t i, std::size_t j) -> double& {
    return j < r ? agents[i].gather_skill[j] : agents[i].craft_skill;
  };
  switch (cfg.skill_init) {
    case SkillInit::uniform:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= r; ++j) skill(i, j) = rng.uniform();
      break;
    case SkillInit::pareto_noise: {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= r; ++j) skill(i, j) = rng.pareto(cfg.pareto_shape);
      for (std::size_t j = 0; j <= r; ++j) {
        double mx = 0.0;
        for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, skill(i, j));
        for (std::size_t i = 0; i < n; ++i) skill(i, j) /= mx;
      }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= r; ++j)
          skill(i, j) = std::clamp(skill(i, j) + rng.normal(0.0, cfg.pareto_noise_std),
                                   cfg.pareto_skill_min, 1.0);
      break;
    }
    case SkillInit::normal:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= r; ++j)
          skill(i, j) = std::clamp(rng.normal(cfg.normal_skill_mean, cfg.normal_skill_std), 0.0,
                                   cfg.skill_max);
      break;
  }
}

double agent_utility(const AgentState& a, const EnvConfig& cfg) {
  return isoelastic_utility(a.total_coin(), a.labor, cfg.utility_eta);
}

double government_utility(const WorldState& s, const EnvConfig& cfg) {
  const auto coins = s.coins();
  return social_welfare(coins, cfg.equality_weight).utility;
}

}  // namespace

WorldState reset(const EnvConfig& cfg, std::uint64_t skill_seed, std::uint64_t episode_seed) {
  cfg.validate();
  WorldState s;
  Rng skill_rng(skill_seed);
  const auto r = static_cast<std::size_t>(cfg.num_resources);
  s.agents.resize(static_cast<std::size_t>(cfg.population_size));
  for (auto& a : s.agents) {
    a.coin = cfg.starting_coin;
    a.resources.assign(r, 0);
    a.escrow_resources.assign(r, 0);
    a.gather_skill.assign(r, 0.0);
  }
  init_skills(cfg, s.agents, skill_rng);
  s.rng = Rng(episode_seed, 1);
  s.market = MarketState(cfg.num_resources);
  s.tax = TaxState(cfg.bracket_thresholds);
  s.timestep = 0;
  s.utility.resize(s.agents.size());
  for (std::size_t i = 0; i < s.agents.size(); ++i) s.utility[i] = agent_utility(s.agents[i], cfg);
  s.gov_utility = government_utility(s, cfg);
  return s;
}

int gather_amount(double gather_skill, Rng& rng) {
  const double rho = 1.1 * rng.uniform();
  return static_cast<int>(std::floor(gather_skill + rho));
}

bool can_craft(const AgentState& agent, const EnvConfig& cfg) {
  int eligible = 0;
  for (int units : agent.resources)
    if (units >= cfg.craft_units_required) ++eligible;
  return eligible >= cfg.craft_distinct_required;
}

double craft(AgentState& agent, const EnvConfig& cfg) {
  if (!can_craft(agent, cfg)) throw std::logic_error("craft precondition not met");
  std::vector<std::size_t> order(agent.resources.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return agent.resources[a] > agent.resources[b]; });
  for (int k = 0; k < cfg.craft_distinct_required; ++k)
    agent.resources[order[static_cast<std::size_t>(k)]] -= cfg.craft_units_required;
  const double gained = agent.craft_skill * cfg.craft_payout_scale;
  agent.coin += gained;
  agent.period_income += gained;
  return gained;
}

double progress_skill(double skill, const EnvConfig& cfg) {
  const double grown = skill * (1.0 + cfg.skill_growth_rate * (1.0 - skill / cfg.skill_max));
  return std::min(grown, cfg.skill_max);
}

bool action_allowed(const WorldState& state, const EnvConfig& cfg, int agent, int action) {
  const ActionSpace space(cfg);
  if (!space.valid_index(action)) return false;
  const AgentState& a = state.agents[static_cast<std::size_t>(agent)];
  const DecodedAction d = space.decode(action);
  switch (d.kind) {
    case ActionKind::gather:
    case ActionKind::noop:
      return true;
    case ActionKind::craft:
      return can_craft(a, cfg);
    case ActionKind::buy:
      return a.live_orders < cfg.max_active_orders &&
             a.coin >= cfg.trade_prices[static_cast<std::size_t>(d.price_index)];
    case ActionKind::sell:
      return a.live_orders < cfg.max_active_orders &&
             a.resources[static_cast<std::size_t>(d.resource)] >= 1;
  }
  return false;
}

void action_mask(const WorldState& state, const EnvConfig& cfg, int agent, std::span<std::uint8_t> mask) {
  const ActionSpace space(cfg);
  const AgentState& a = state.agents[static_cast<std::size_t>(agent)];
  const int R = cfg.num_resources;
  const int P = cfg.num_prices();
  const bool can_trade = a.live_orders < cfg.max_active_orders;
  for (int r = 0; r < R; ++r) mask[static_cast<std::size_t>(space.gather(r))] = 1;
  mask[static_cast<std::size_t>(space.craft())] = can_craft(a, cfg) ? 1 : 0;
  for (int r = 0; r < R; ++r) {
    const bool has_unit = a.resources[static_cast<std::size_t>(r)] >= 1;
    for (int p = 0; p < P; ++p) {
      const bool affordable = a.coin >= cfg.trade_prices[static_cast<std::size_t>(p)];
      mask[static_cast<std::size_t>(space.buy(r, p))] = (can_trade && affordable) ? 1 : 0;
      mask[static_cast<std::size_t>(space.sell(r, p))] = (can_trade && has_unit) ? 1 : 0;
    }
  }
  if (space.has_noop()) mask[static_cast<std::size_t>(space.noop())] = 1;
}

std::vector<std::uint8_t> action_mask(const WorldState& state, const EnvConfig& cfg, int agent) {
  std::vector<std::uint8_t> m(static_cast<std::size_t>(ActionSpace(cfg).size()), 0);
  action_mask(state, cfg, agent, m);
  return m;
}

void step(const EnvConfig& cfg, WorldState& state, std::span<const int> actions,
          std::span<const int> gov_levels, StepResult& out) {
  const auto n = state.agents.size();
  if (actions.size() != n)
    throw std::invalid_argument("expected " + std::to_string(n) + " actions, got " +
                                std::to_string(actions.size()));
  if (state.timestep >= cfg.episode_length) throw std::logic_error("step called on a finished episode");

  out.trades.clear();
  out.crafts = 0;
  out.crafted_coin = 0.0;
  out.tax_collected = 0.0;
  out.tax_collected_this_step = false;
  out.gathered_units.assign(static_cast<std::size_t>(cfg.num_resources), 0);
  out.crafted_units.assign(static_cast<std::size_t>(cfg.num_resources), 0);

  // Step 0 opens the first period, so the government sets its rates too.
  if (cfg.taxes_enabled && state.timestep == 0 && !gov_levels.empty()) apply_rate_action(state.tax, gov_levels, 0);

  const ActionSpace space(cfg);
  for (std::size_t i = 0; i < n; ++i) {
    const int act = actions[i];
    const int agent = static_cast<int>(i);
    if (!action_allowed(state, cfg, agent, act)) throw InvalidAction(agent, act, "action is masked");
    AgentState& a = state.agents[i];
    const DecodedAction d = space.decode(act);
    switch (d.kind) {
      case ActionKind::gather: {
        const auto r = static_cast<std::size_t>(d.resource);
        const int units = gather_amount(a.gather_skill[r], state.rng);
        a.resources[r] += units;
        out.gathered_units[r] += units;
        a.labor += cfg.labor_cost_gather;
        if (cfg.skill_growth_enabled) a.gather_skill[r] = progress_skill(a.gather_skill[r], cfg);
        break;
      }
      case ActionKind::craft: {
        const auto held = a.resources;
        out.crafted_coin += craft(a, cfg);
        for (std::size_t r = 0; r < held.size(); ++r) out.crafted_units[r] += held[r] - a.resources[r];
        ++out.crafts;
        a.labor += cfg.labor_cost_craft;
        if (cfg.skill_growth_enabled) a.craft_skill = progress_skill(a.craft_skill, cfg);
        break;
      }
      case ActionKind::buy:
      case ActionKind::sell:
        place_order(state.market, state.agents, agent, d.resource,
                    d.kind == ActionKind::buy ? Side::buy : Side::sell,
                    cfg.trade_prices[static_cast<std::size_t>(d.price_index)], state.timestep,
                    cfg.max_active_orders);
        a.labor += cfg.labor_cost_trade;
        break;
      case ActionKind::noop:
        break;
    }
  }

  match_round(state.market, state.agents, state.rng, out.trades);
  expire_orders(state.market, state.agents, state.timestep + 1, cfg.order_expiry);

  const int next = state.timestep + 1;
  if (cfg.taxes_enabled && next % cfg.tax_period_length == 0) {
    out.tax_collected = collect_and_redistribute(state.agents, state.tax);
    out.tax_collected_this_step = true;
    if (!gov_levels.empty()) apply_rate_action(state.tax, gov_levels, next);
  }

  out.rewards.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = agent_utility(state.agents[i], cfg);
    out.rewards[i] = reward_delta(state.utility[i], u);
    state.utility[i] = u;
  }
  const double ug = government_utility(state, cfg);
  out.gov_reward = reward_delta(state.gov_utility, ug);
  state.gov_utility = ug;

  state.timestep = next;
  out.done = state.timestep == cfg.episode_length;
}

StepResult step(const EnvConfig& cfg, WorldState& state, std::span<const int> actions,
                std::span<const int> gov_levels) {
  StepResult r;
  step(cfg, state, actions, gov_levels, r);
  return r;
}

namespace {

class ByteWriter {
 public:
  template <class T>
  void put(const T& v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out_.append(buf, sizeof(T));
  }
  template <class T>
  void put_all(const std::vector<T>& v) {
    put(v.size());
    for (const T& x : v) put(x);
  }
  void put_str(const std::string& s) {
    put(s.size());
    out_ += s;
  }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

void put_orders(ByteWriter& w, const std::vector<Order>& orders) {
  w.put(orders.size());
  for (const Order& o : orders) {
    w.put(o.owner);
    w.put(o.resource);
    w.put(static_cast<std::uint8_t>(o.side));
    w.put(o.price);
    w.put(o.placed_at);
    w.put(o.order_id);
  }
}

}  // namespace

std::string serialize(const WorldState& s) {
  ByteWriter w;
  w.put(s.timestep);
  w.put(s.agents.size());
  for (const auto& a : s.agents) {
    w.put(a.coin);
    w.put_all(a.resources);
    w.put(a.escrow_coin);
    w.put_all(a.escrow_resources);
    w.put_all(a.gather_skill);
    w.put(a.craft_skill);
    w.put(a.labor);
    w.put(a.period_income);
    w.put(a.live_orders);
  }
  w.put(s.market.next_order_id);
  w.put(s.market.books.size());
  for (const auto& b : s.market.books) {
    put_orders(w, b.bids);
    put_orders(w, b.asks);
    w.put(b.last_price);
    w.put(b.trade_count);
  }
  w.put_all(s.tax.bracket_thresholds);
  w.put_all(s.tax.current_rates);
  w.put(s.tax.period_start_step);
  w.put_all(s.utility);
  w.put(s.gov_utility);
  w.put_str(s.rng.serialize());
  return w.take();
}

}  // namespace vecon
