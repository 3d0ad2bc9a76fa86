#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "vecon/ppo/trainer.hpp"

namespace vecon::harness {

/// Fixed-precision text for CSV/JSON numbers: 9 significant digits, "nan" for NaN.
std::string format_float(double v);

/// metrics.csv columns, in order. Widths depend on the bracket and resource counts.
std::vector<std::string> metrics_columns(int num_brackets, int num_resources);

std::string metrics_csv_row(const ppo::MetricsRecord& r, const std::string& config_hash, std::uint64_t seed);

/// Same fields as the CSV row plus wall-clock steps_per_sec, as one JSON object.
std::string metrics_json_line(const ppo::MetricsRecord& r, const std::string& config_hash, std::uint64_t seed);

/// Writes metrics.csv and metrics.jsonl into `dir`, flushing after every record.
class MetricsWriter {
 public:
  MetricsWriter(const std::string& dir, std::string config_hash, std::uint64_t seed, int num_brackets,
                int num_resources);
  void write(const ppo::MetricsRecord& r);

 private:
  std::ofstream csv_, jsonl_;
  std::string hash_;
  std::uint64_t seed_;
};

}  // namespace vecon::harness
