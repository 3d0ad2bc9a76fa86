#include "vecon/harness/run_config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

namespace vecon::harness {

std::string to_string(DistinctRule r) {
  switch (r) {
    case DistinctRule::fixed:
      return "fixed";
    case DistinctRule::log2:
      return "log2";
    case DistinctRule::literal_min:
      return "literal_min";
  }
  return "fixed";
}

DistinctRule distinct_rule_from_string(const std::string& s) {
  if (s == "fixed") return DistinctRule::fixed;
  if (s == "log2") return DistinctRule::log2;
  if (s == "literal_min") return DistinctRule::literal_min;
  throw ConfigError("env.craft_distinct_rule", "unknown rule '" + s + "'");
}

EnvConfig RunConfig::resolved_env() const {
  EnvConfig e = env;
  const int lg = e.num_resources >= 1 ? static_cast<int>(std::floor(std::log2(e.num_resources))) : 0;
  if (craft_distinct_rule == DistinctRule::log2) e.craft_distinct_required = std::max(1, lg);
  if (craft_distinct_rule == DistinctRule::literal_min) e.craft_distinct_required = std::min(1, lg);
  return e;
}

void RunConfig::validate() const {
  resolved_env().validate();
  train.validate();
  if (run_name.empty()) throw ConfigError("run.name", "must not be empty");
}

namespace {

// ---------------------------------------------------------------- value text

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
std::string fmt(int v) { return std::to_string(v); }
std::string fmt(std::int64_t v) { return std::to_string(v); }
std::string fmt(std::uint64_t v) { return std::to_string(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }
std::string fmt(const std::string& v) { return v; }
std::string fmt(SkillInit v) { return to_string(v); }
std::string fmt(ppo::SharingMode v) { return ppo::to_string(v); }
std::string fmt(DistinctRule v) { return to_string(v); }
template <class T>
std::string fmt(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt(v[i]);
  return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  T v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw ConfigError(key, "cannot parse '" + s + "' as a number");
  return v;
}

void parse(const std::string& key, const std::string& s, double& out) {
  out = parse_number<double>(key, s);
  if (!std::isfinite(out)) throw ConfigError(key, "must be finite");
}
void parse(const std::string& key, const std::string& s, int& out) { out = parse_number<int>(key, s); }
void parse(const std::string& key, const std::string& s, std::int64_t& out) {
  // Accept scientific notation for step counts (e.g. 1e7) when it is integral.
  const std::string t = trim(s);
  if (t.find_first_of("eE.") != std::string::npos) {
    const double d = parse_number<double>(key, t);
    if (d != std::floor(d) || std::fabs(d) > 9.0e18) throw ConfigError(key, "must be an integer");
    out = static_cast<std::int64_t>(d);
    return;
  }
  out = parse_number<std::int64_t>(key, t);
}
void parse(const std::string& key, const std::string& s, std::uint64_t& out) { out = parse_number<std::uint64_t>(key, s); }
void parse(const std::string& key, const std::string& s, bool& out) {
  const std::string t = trim(s);
  if (t == "true") out = true;
  else if (t == "false") out = false;
  else throw ConfigError(key, "expected true or false, got '" + t + "'");
}
void parse(const std::string&, const std::string& s, std::string& out) { out = trim(s); }
void parse(const std::string& key, const std::string& s, SkillInit& out) {
  try {
    out = skill_init_from_string(trim(s));
  } catch (const std::exception& e) {
    throw ConfigError(key, e.what());
  }
}
void parse(const std::string& key, const std::string& s, ppo::SharingMode& out) {
  try {
    out = ppo::sharing_mode_from_string(trim(s));
  } catch (const std::exception& e) {
    throw ConfigError(key, e.what());
  }
}
void parse(const std::string& key, const std::string& s, DistinctRule& out) {
  try {
    out = distinct_rule_from_string(trim(s));
  } catch (const std::exception& e) {
    throw ConfigError(key, e.what());
  }
}
template <class T>
void parse(const std::string& key, const std::string& s, std::vector<T>& out) {
  out.clear();
  if (trim(s).empty()) return;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    T v{};
    parse(key, item, v);
    out.push_back(v);
  }
}

// ---------------------------------------------------------------- key table

struct Field {
  std::string key;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

template <class Ref>
Field field(std::string key, Ref ref) {
  Field f;
  f.key = key;
  f.get = [ref](const RunConfig& c) { return fmt(ref(const_cast<RunConfig&>(c))); };
  f.set = [ref, key](RunConfig& c, const std::string& v) { parse(key, v, ref(c)); };
  return f;
}

#define VECON_FIELD(name, member) field(name, [](RunConfig& c) -> auto& { return c.member; })

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      VECON_FIELD("run.preset", preset),
      VECON_FIELD("run.name", run_name),
      VECON_FIELD("run.seed", seed),
      VECON_FIELD("run.output_dir", output_dir),
      VECON_FIELD("env.population_size", env.population_size),
      VECON_FIELD("env.num_resources", env.num_resources),
      VECON_FIELD("env.episode_length", env.episode_length),
      VECON_FIELD("env.tax_period_length", env.tax_period_length),
      VECON_FIELD("env.allow_noop", env.allow_noop),
      VECON_FIELD("env.starting_coin", env.starting_coin),
      VECON_FIELD("env.order_expiry", env.order_expiry),
      VECON_FIELD("env.trade_prices", env.trade_prices),
      VECON_FIELD("env.max_active_orders", env.max_active_orders),
      VECON_FIELD("env.craft_units_required", env.craft_units_required),
      VECON_FIELD("env.craft_distinct_required", env.craft_distinct_required),
      VECON_FIELD("env.craft_distinct_rule", craft_distinct_rule),
      VECON_FIELD("env.labor_cost_craft", env.labor_cost_craft),
      VECON_FIELD("env.labor_cost_gather", env.labor_cost_gather),
      VECON_FIELD("env.labor_cost_trade", env.labor_cost_trade),
      VECON_FIELD("env.utility_eta", env.utility_eta),
      VECON_FIELD("env.equality_weight", env.equality_weight),
      VECON_FIELD("env.craft_payout_scale", env.craft_payout_scale),
      VECON_FIELD("env.bracket_thresholds", env.bracket_thresholds),
      VECON_FIELD("env.skill_growth_rate", env.skill_growth_rate),
      VECON_FIELD("env.skill_max", env.skill_max),
      VECON_FIELD("env.skill_growth_enabled", env.skill_growth_enabled),
      VECON_FIELD("env.taxes_enabled", env.taxes_enabled),
      VECON_FIELD("env.skill_init", env.skill_init),
      VECON_FIELD("env.pareto_shape", env.pareto_shape),
      VECON_FIELD("env.pareto_noise_std", env.pareto_noise_std),
      VECON_FIELD("env.pareto_skill_min", env.pareto_skill_min),
      VECON_FIELD("env.normal_skill_mean", env.normal_skill_mean),
      VECON_FIELD("env.normal_skill_std", env.normal_skill_std),
      VECON_FIELD("train.total_timesteps", train.total_timesteps),
      VECON_FIELD("train.learning_rate", train.learning_rate),
      VECON_FIELD("train.anneal_lr", train.anneal_lr),
      VECON_FIELD("train.gamma", train.gamma),
      VECON_FIELD("train.gae_lambda", train.gae_lambda),
      VECON_FIELD("train.clip_eps", train.clip_eps),
      VECON_FIELD("train.entropy_coef", train.entropy_coef),
      VECON_FIELD("train.entropy_anneal_fraction", train.entropy_anneal_fraction),
      VECON_FIELD("train.value_coef", train.value_coef),
      VECON_FIELD("train.value_clip", train.value_clip),
      VECON_FIELD("train.rollout_length", train.rollout_length),
      VECON_FIELD("train.num_epochs", train.num_epochs),
      VECON_FIELD("train.num_minibatches", train.num_minibatches),
      VECON_FIELD("train.num_envs", train.num_envs),
      VECON_FIELD("train.hidden_width", train.hidden_width),
      VECON_FIELD("train.independent_hidden_width", train.independent_hidden_width),
      VECON_FIELD("train.sharing_mode", train.sharing_mode),
      VECON_FIELD("train.government_enabled", train.government_enabled),
      VECON_FIELD("train.normalize_advantages", train.normalize_advantages),
      VECON_FIELD("train.max_grad_norm", train.max_grad_norm),
      VECON_FIELD("train.adam_beta1", train.adam_beta1),
      VECON_FIELD("train.adam_beta2", train.adam_beta2),
      VECON_FIELD("train.adam_eps", train.adam_eps),
      VECON_FIELD("train.num_workers", train.num_workers),
      VECON_FIELD("train.checkpoint_interval", train.checkpoint_interval),
  };
  return table;
}

#undef VECON_FIELD

const Field& find(const std::string& key) {
  for (const auto& f : fields())
    if (f.key == key) return f;
  throw ConfigError(key, "unknown configuration key");
}

bool excluded_from_hash(const std::string& key) {
  return key == "run.name" || key == "run.output_dir" || key == "train.num_workers" ||
         key == "train.checkpoint_interval";
}

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& f : fields()) k.push_back(f.key);
    return k;
  }();
  return keys;
}

void set_key(RunConfig& cfg, const std::string& key, const std::string& value) { find(key).set(cfg, value); }

std::string get_key(const RunConfig& cfg, const std::string& key) { return find(key).get(cfg); }

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"section4_default", "free_market", "section5_multiagent"};
  return names;
}

RunConfig make_preset(const std::string& name) {
  RunConfig c;
  c.preset = name;
  if (name == "section4_default" || name == "free_market") {
    c.env.skill_init = SkillInit::pareto_noise;
    // The population's only coin source must be able to pay for its labor;
    // see the README section on craft payouts.
    c.env.craft_payout_scale = kSection4PayoutScale;
    const bool taxed = name == "section4_default";
    c.env.taxes_enabled = taxed;
    c.train.government_enabled = taxed;
    return c;
  }
  if (name == "section5_multiagent") {
    c.env.num_resources = 4;
    c.env.trade_prices = {3, 6, 9};
    c.env.skill_init = SkillInit::normal;
    c.env.skill_growth_enabled = true;
    c.env.taxes_enabled = false;
    c.train.government_enabled = false;
    c.train.hidden_width = 256;
    c.train.independent_hidden_width = 128;
    c.craft_distinct_rule = DistinctRule::log2;
    return c;
  }
  throw ConfigError("run.preset", "unknown preset '" + name + "'");
}

RunConfig parse_config(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  std::string preset = "section4_default";
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno), "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    find(key);  // reject unknown keys before anything else
    if (key == "run.preset") preset = value;
    else entries.emplace_back(key, value);
  }
  RunConfig cfg = make_preset(preset);
  for (const auto& [k, v] : entries) set_key(cfg, k, v);
  return cfg;
}

std::string serialize(const RunConfig& cfg) {
  std::string out;
  for (const auto& f : fields()) out += f.key + " = " + f.get(cfg) + "\n";
  return out;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string config_hash(const RunConfig& cfg) {
  std::string text;
  for (const auto& f : fields())
    if (!excluded_from_hash(f.key)) text += f.key + " = " + f.get(cfg) + "\n";
  return hex(fnv1a(text));
}

std::string env_hash(const RunConfig& cfg) {
  RunConfig resolved = cfg;
  resolved.env = cfg.resolved_env();
  resolved.craft_distinct_rule = DistinctRule::fixed;
  std::string text;
  for (const auto& f : fields())
    if (f.key.rfind("env.", 0) == 0 && f.key != "env.craft_distinct_rule") text += f.key + " = " + f.get(resolved) + "\n";
  return hex(fnv1a(text));
}

}  // namespace vecon::harness
