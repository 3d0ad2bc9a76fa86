#include "vecon/observation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vecon {

void ObservationLayout::add(std::string name, int width) {
  fields_.push_back({std::move(name), size_, width});
  size_ += width;
}

const ObsField& ObservationLayout::field(const std::string& name) const {
  for (const auto& f : fields_)
    if (f.name == name) return f;
  throw std::out_of_range("no observation field '" + name + "'");
}

ObservationLayout ObservationLayout::population(const EnvConfig& cfg, bool with_agent_id) {
  const int R = cfg.num_resources;
  ObservationLayout l;
  l.add("coin", 1);
  l.add("resources", R);
  l.add("escrow_coin", 1);
  l.add("escrow_resources", R);
  l.add("gather_skill", R);
  l.add("craft_skill", 1);
  l.add("labor", 1);
  l.add("period_income", 1);
  l.add("market", 5 * R);
  l.add("tax_rates", cfg.num_brackets());
  l.add("period_progress", 1);
  l.add("episode_progress", 1);
  if (with_agent_id) l.add("agent_id", cfg.population_size);
  return l;
}

ObservationLayout ObservationLayout::government(const EnvConfig& cfg) {
  const int R = cfg.num_resources;
  ObservationLayout l;
  for (const char* stat : {"mean", "std", "median"}) {
    const std::string s(stat);
    l.add(s + "_coin", 1);
    l.add(s + "_labor", 1);
    l.add(s + "_period_income", 1);
    l.add(s + "_resources", R);
  }
  l.add("tax_rates", cfg.num_brackets());
  l.add("period_progress", 1);
  l.add("episode_progress", 1);
  return l;
}

std::string ObservationLayout::schema() const {
  std::ostringstream os;
  os << "# layout version " << kVersion << ", size " << size_ << "\n";
  for (const auto& f : fields_) os << f.name << ' ' << f.offset << ' ' << f.width << '\n';
  return os.str();
}

namespace {

float period_progress(const WorldState& s, const EnvConfig& cfg) {
  return static_cast<float>(s.timestep % cfg.tax_period_length) / static_cast<float>(cfg.tax_period_length);
}

float episode_progress(const WorldState& s, const EnvConfig& cfg) {
  return static_cast<float>(s.timestep) / static_cast<float>(cfg.episode_length);
}

}  // namespace

void build_pop_obs(const WorldState& state, const EnvConfig& cfg, int agent, bool with_agent_id,
                   std::span<const BookStats> stats, std::span<float> out) {
  const AgentState& a = state.agents[static_cast<std::size_t>(agent)];
  const auto R = static_cast<std::size_t>(cfg.num_resources);
  const double price_scale = 1.0 / cfg.max_price();
  std::size_t k = 0;
  out[k++] = static_cast<float>(a.coin * kCoinScale);
  for (std::size_t r = 0; r < R; ++r) out[k++] = static_cast<float>(a.resources[r] * kCountScale);
  out[k++] = static_cast<float>(a.escrow_coin * kCoinScale);
  for (std::size_t r = 0; r < R; ++r) out[k++] = static_cast<float>(a.escrow_resources[r] * kCountScale);
  for (std::size_t r = 0; r < R; ++r) out[k++] = static_cast<float>(a.gather_skill[r]);
  out[k++] = static_cast<float>(a.craft_skill);
  out[k++] = static_cast<float>(a.labor * kCoinScale);
  out[k++] = static_cast<float>(a.period_income * kCoinScale);
  for (std::size_t r = 0; r < R; ++r) {
    const BookStats& b = stats[r];
    out[k++] = static_cast<float>(b.highest_bid * price_scale);
    out[k++] = static_cast<float>(b.lowest_ask * price_scale);
    out[k++] = static_cast<float>(b.buy_count * kCountScale);
    out[k++] = static_cast<float>(b.sell_count * kCountScale);
    out[k++] = static_cast<float>(b.last_price * price_scale);
  }
  for (double rate : state.tax.current_rates) out[k++] = static_cast<float>(rate);
  out[k++] = period_progress(state, cfg);
  out[k++] = episode_progress(state, cfg);
  if (with_agent_id) {
    for (int i = 0; i < cfg.population_size; ++i) out[k++] = i == agent ? 1.0f : 0.0f;
  }
}

std::vector<float> build_pop_obs(const WorldState& state, const EnvConfig& cfg, int agent,
                                 bool with_agent_id) {
  std::vector<float> out(
      static_cast<std::size_t>(ObservationLayout::population(cfg, with_agent_id).size()));
  const auto stats = market_stats(state.market);
  build_pop_obs(state, cfg, agent, with_agent_id, stats, out);
  return out;
}

PopulationStat population_stat(std::span<const double> values) {
  PopulationStat s;
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  for (double v : values) s.mean += v;
  s.mean /= n;
  double var = 0.0;
  for (double v : values) var += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(var / n);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size() / 2;
  s.median = sorted.size() % 2 == 1 ? sorted[m] : 0.5 * (sorted[m - 1] + sorted[m]);
  return s;
}

void build_gov_obs(const WorldState& state, const EnvConfig& cfg, std::span<float> out) {
  const auto n = state.agents.size();
  const auto R = static_cast<std::size_t>(cfg.num_resources);
  // Columns: coin, labor, period_income, resources[R].
  const std::size_t cols = 3 + R;
  std::vector<PopulationStat> col_stats(cols);
  std::vector<double> values(n);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      const AgentState& a = state.agents[i];
      switch (c) {
        case 0:
          values[i] = a.coin * kCoinScale;
          break;
        case 1:
          values[i] = a.labor * kCoinScale;
          break;
        case 2:
          values[i] = a.period_income * kCoinScale;
          break;
        default:
          values[i] = a.resources[c - 3] * kCountScale;
      }
    }
    col_stats[c] = population_stat(values);
  }
  std::size_t k = 0;
  for (int which = 0; which < 3; ++which) {
    for (std::size_t c = 0; c < cols; ++c) {
      const PopulationStat& s = col_stats[c];
      out[k++] = static_cast<float>(which == 0 ? s.mean : which == 1 ? s.stddev : s.median);
    }
  }
  for (double rate : state.tax.current_rates) out[k++] = static_cast<float>(rate);
  out[k++] = period_progress(state, cfg);
  out[k++] = episode_progress(state, cfg);
}

std::vector<float> build_gov_obs(const WorldState& state, const EnvConfig& cfg) {
  std::vector<float> out(static_cast<std::size_t>(ObservationLayout::government(cfg).size()));
  build_gov_obs(state, cfg, out);
  return out;
}

}  // namespace vecon
