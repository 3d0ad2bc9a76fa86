#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace vecon::nn {

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NamedTensor {
  std::string name;
  std::vector<std::int64_t> shape;
  std::vector<float> data;
};

/// Self-describing tensor container:
///   "VECONCKP" | u32 version | u64 header bytes | JSON header | f32 payload (little endian)
/// The header holds free-form metadata plus {name, shape, offset} per tensor.
/// Output is byte-stable for identical inputs.
struct TensorFile {
  static constexpr std::uint32_t kVersion = 1;

  nlohmann::json meta = nlohmann::json::object();
  std::vector<NamedTensor> tensors;

  const NamedTensor& get(const std::string& name) const;

  std::string to_bytes() const;
  static TensorFile from_bytes(const std::string& bytes);

  void save(const std::string& path) const;
  static TensorFile load(const std::string& path);
};

}  // namespace vecon::nn
