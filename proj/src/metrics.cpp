#include "vecon/harness/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace vecon::harness {

namespace {

const char* const kActionKinds[] = {"gather", "craft", "buy", "sell", "noop"};

/// Column values of one record, in metrics_columns() order (hash and seed excluded).
std::vector<double> values_of(const ppo::MetricsRecord& r) {
  std::vector<double> v = {static_cast<double>(r.update), static_cast<double>(r.global_step),
                           static_cast<double>(r.episodes), r.pop_return_mean, r.pop_return_median, r.productivity,
                           r.equality, r.gov_utility, r.gov_return};
  v.insert(v.end(), r.tax_rates.begin(), r.tax_rates.end());
  v.insert(v.end(), r.trade_price.begin(), r.trade_price.end());
  v.insert(v.end(), r.action_fraction.begin(), r.action_fraction.end());
  v.insert(v.end(), r.gov_level_mean.begin(), r.gov_level_mean.end());
  const auto& l = r.losses;
  for (double x : {l.policy_loss, l.value_loss, l.entropy, l.approx_kl, l.clip_fraction, l.gov_policy_loss,
                   l.gov_value_loss, l.gov_entropy, l.learning_rate, l.entropy_coef})
    v.push_back(x);
  return v;
}

std::string format_int(double v) { return std::to_string(static_cast<long long>(v)); }

}  // namespace

std::string format_float(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::vector<std::string> metrics_columns(int num_brackets, int num_resources) {
  std::vector<std::string> c = {"config_hash", "seed",         "update",        "global_step",
                                "episodes",    "pop_return_mean", "pop_return_median", "productivity",
                                "equality",    "gov_utility",  "gov_return"};
  for (int b = 0; b < num_brackets; ++b) c.push_back("tax_rate_" + std::to_string(b));
  for (int r = 0; r < num_resources; ++r) c.push_back("trade_price_" + std::to_string(r));
  for (const char* k : kActionKinds) c.push_back(std::string("frac_") + k);
  for (int b = 0; b < num_brackets; ++b) c.push_back("gov_level_mean_" + std::to_string(b));
  for (const char* k : {"policy_loss", "value_loss", "entropy", "approx_kl", "clip_fraction", "gov_policy_loss",
                        "gov_value_loss", "gov_entropy", "learning_rate", "entropy_coef"})
    c.push_back(k);
  return c;
}

std::string metrics_csv_row(const ppo::MetricsRecord& r, const std::string& config_hash, std::uint64_t seed) {
  std::string out = config_hash + "," + std::to_string(seed);
  const auto v = values_of(r);
  for (std::size_t i = 0; i < v.size(); ++i) out += "," + (i < 3 ? format_int(v[i]) : format_float(v[i]));
  return out;
}

std::string metrics_json_line(const ppo::MetricsRecord& r, const std::string& config_hash, std::uint64_t seed) {
  const auto cols = metrics_columns(static_cast<int>(r.tax_rates.size()), static_cast<int>(r.trade_price.size()));
  const auto v = values_of(r);
  std::string out = "{\"config_hash\":\"" + config_hash + "\",\"seed\":" + std::to_string(seed);
  for (std::size_t i = 0; i < v.size(); ++i) {
    // JSON has no NaN; missing values are null.
    const std::string num = i < 3 ? format_int(v[i]) : (std::isfinite(v[i]) ? format_float(v[i]) : "null");
    out += ",\"" + cols[i + 2] + "\":" + num;
  }
  out += ",\"steps_per_sec\":" + format_float(r.steps_per_sec) + "}";
  return out;
}

MetricsWriter::MetricsWriter(const std::string& dir, std::string config_hash, std::uint64_t seed, int num_brackets,
                             int num_resources)
    : csv_(dir + "/metrics.csv", std::ios::trunc), jsonl_(dir + "/metrics.jsonl", std::ios::trunc),
      hash_(std::move(config_hash)), seed_(seed) {
  if (!csv_ || !jsonl_) throw std::runtime_error("cannot open metrics files in " + dir);
  const auto cols = metrics_columns(num_brackets, num_resources);
  for (std::size_t i = 0; i < cols.size(); ++i) csv_ << (i ? "," : "") << cols[i];
  csv_ << '\n';
  csv_.flush();
}

void MetricsWriter::write(const ppo::MetricsRecord& r) {
  csv_ << metrics_csv_row(r, hash_, seed_) << '\n';
  jsonl_ << metrics_json_line(r, hash_, seed_) << '\n';
  csv_.flush();
  jsonl_.flush();
}

}  // namespace vecon::harness
