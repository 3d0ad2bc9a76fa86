#include "vecon/nn/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace vecon::nn {

namespace {

constexpr char kMagic[8] = {'V', 'E', 'C', 'O', 'N', 'C', 'K', 'P'};

static_assert(std::endian::native == std::endian::little, "checkpoint payloads assume a little-endian host");

template <class T>
void put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

template <class T>
T take(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw CheckpointError("checkpoint truncated");
  T v;
  std::memcpy(&v, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

std::int64_t element_count(const std::vector<std::int64_t>& shape) {
  std::int64_t n = 1;
  for (auto d : shape) {
    if (d < 0) throw CheckpointError("negative tensor dimension");
    n *= d;
  }
  return n;
}

}  // namespace

const NamedTensor& TensorFile::get(const std::string& name) const {
  for (const auto& t : tensors)
    if (t.name == name) return t;
  throw CheckpointError("checkpoint has no tensor '" + name + "'");
}

std::string TensorFile::to_bytes() const {
  nlohmann::json header;
  header["meta"] = meta;
  auto& list = header["tensors"] = nlohmann::json::array();
  std::int64_t offset = 0;
  for (const auto& t : tensors) {
    const std::int64_t n = element_count(t.shape);
    if (n != static_cast<std::int64_t>(t.data.size()))
      throw CheckpointError("tensor '" + t.name + "' shape does not match its data");
    list.push_back({{"name", t.name}, {"shape", t.shape}, {"offset", offset}, {"dtype", "f32"}});
    offset += n;
  }
  const std::string text = header.dump();
  std::string out(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kVersion);
  put<std::uint64_t>(out, text.size());
  out += text;
  for (const auto& t : tensors)
    out.append(reinterpret_cast<const char*>(t.data.data()), t.data.size() * sizeof(float));
  return out;
}

TensorFile TensorFile::from_bytes(const std::string& bytes) {
  if (bytes.size() < sizeof(kMagic) || std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0)
    throw CheckpointError("not a checkpoint file (bad magic)");
  std::size_t pos = sizeof(kMagic);
  const auto version = take<std::uint32_t>(bytes, pos);
  if (version != kVersion) throw CheckpointError("unsupported checkpoint version " + std::to_string(version));
  const auto len = take<std::uint64_t>(bytes, pos);
  if (pos + len > bytes.size()) throw CheckpointError("checkpoint header truncated");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(bytes.substr(pos, len));
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(std::string("corrupt checkpoint header: ") + e.what());
  }
  pos += len;
  const std::size_t payload = pos;
  TensorFile f;
  f.meta = header.value("meta", nlohmann::json::object());
  std::int64_t total = 0;
  for (const auto& entry : header.at("tensors")) {
    NamedTensor t;
    t.name = entry.at("name").get<std::string>();
    t.shape = entry.at("shape").get<std::vector<std::int64_t>>();
    const auto offset = entry.at("offset").get<std::int64_t>();
    const std::int64_t n = element_count(t.shape);
    const std::size_t begin = payload + static_cast<std::size_t>(offset) * sizeof(float);
    if (begin + static_cast<std::size_t>(n) * sizeof(float) > bytes.size())
      throw CheckpointError("tensor '" + t.name + "' extends past the end of the file");
    t.data.resize(static_cast<std::size_t>(n));
    std::memcpy(t.data.data(), bytes.data() + begin, t.data.size() * sizeof(float));
    total += n;
    f.tensors.push_back(std::move(t));
  }
  if (payload + static_cast<std::size_t>(total) * sizeof(float) != bytes.size())
    throw CheckpointError("checkpoint payload size mismatch");
  return f;
}

void TensorFile::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CheckpointError("cannot write " + path);
  const std::string bytes = to_bytes();
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw CheckpointError("write failed for " + path);
}

TensorFile TensorFile::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_bytes(ss.str());
}

}  // namespace vecon::nn
