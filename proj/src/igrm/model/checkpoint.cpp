#include "igrm/model/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <unordered_map>

namespace igrm::model {

namespace {

constexpr char kMagic[8] = {'I', 'G', 'R', 'M', 'C', 'K', 'P', 'T'};
constexpr uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "checkpoint io assumes a little-endian host");

template <typename T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::ifstream& in, const std::string& path) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) fail(ErrorCode::io, "checkpoint ", path, ": truncated file");
  return v;
}

}  // namespace

void save_checkpoint(
    const std::string& path,
    const std::vector<std::pair<std::string, num::Tensor>>& tensors) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io, "checkpoint: cannot write ", path);
  out.write(kMagic, sizeof kMagic);
  put(out, kVersion);
  put(out, static_cast<uint64_t>(tensors.size()));
  for (const auto& [name, t] : tensors) {
    put(out, static_cast<uint64_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    put(out, static_cast<uint64_t>(t.rows()));
    put(out, static_cast<uint64_t>(t.cols()));
    const auto& v = t.values();
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(real)));
  }
  if (!out) fail(ErrorCode::io, "checkpoint: short write to ", path);
}

std::vector<LoadedTensor> load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "checkpoint: cannot open ", path);
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    fail(ErrorCode::parse, "checkpoint ", path, ": bad magic");
  auto version = get<uint32_t>(in, path);
  if (version != kVersion)
    fail(ErrorCode::parse, "checkpoint ", path, ": unsupported version ",
         version);
  auto count = get<uint64_t>(in, path);
  std::vector<LoadedTensor> out;
  for (uint64_t i = 0; i < count; ++i) {
    auto name_len = get<uint64_t>(in, path);
    LoadedTensor t;
    t.name.resize(name_len);
    in.read(t.name.data(), static_cast<std::streamsize>(name_len));
    t.rows = static_cast<int64_t>(get<uint64_t>(in, path));
    t.cols = static_cast<int64_t>(get<uint64_t>(in, path));
    if (t.rows < 0 || t.cols < 0)
      fail(ErrorCode::parse, "checkpoint ", path, ": bad shape for '", t.name,
           "'");
    t.values.resize(static_cast<size_t>(t.rows * t.cols));
    in.read(reinterpret_cast<char*>(t.values.data()),
            static_cast<std::streamsize>(t.values.size() * sizeof(real)));
    if (!in) fail(ErrorCode::io, "checkpoint ", path, ": truncated tensor '",
                  t.name, "'");
    out.push_back(std::move(t));
  }
  return out;
}

void restore_checkpoint(
    const std::vector<std::pair<std::string, num::Tensor>>& dst,
    const std::vector<LoadedTensor>& src) {
  std::unordered_map<std::string, const LoadedTensor*> by_name;
  for (const auto& t : src) by_name[t.name] = &t;
  for (const auto& [name, tensor] : dst) {
    auto it = by_name.find(name);
    require(it != by_name.end(), "checkpoint: missing tensor '", name, "'");
    const LoadedTensor& t = *it->second;
    require(t.rows == tensor.rows() && t.cols == tensor.cols(),
            "checkpoint: tensor '", name, "' is ", t.rows, "x", t.cols,
            ", model expects ", tensor.rows(), "x", tensor.cols());
    const_cast<num::Tensor&>(tensor).values() = t.values;
  }
}

}  // namespace igrm::model
