#include "leortc/policy/tensor_store.h"

#include <bit>
#include <fstream>

#include <json.hpp>

#include "leortc/common/error.h"

static_assert(std::endian::native == std::endian::little,
              "tensor payloads are little-endian; big-endian hosts need a "
              "byte swap pass");

namespace leortc {
namespace policy {

namespace {
constexpr char kMagic[4] = {'L', 'T', 'W', 'F'};
constexpr uint32_t kVersion = 1;
}  // namespace

void TensorStore::Add(const std::string& name, std::vector<int> shape,
                      std::vector<float> data) {
  Tensor t;
  t.name = name;
  t.shape = std::move(shape);
  t.data = std::move(data);
  if (t.NumElements() != static_cast<int64_t>(t.data.size())) {
    throw Error(ErrorCode::kShapeMismatch,
                "tensor '" + name + "' data does not match its shape");
  }
  tensors.push_back(std::move(t));
}

bool TensorStore::Has(const std::string& name) const {
  for (const Tensor& t : tensors) {
    if (t.name == name) return true;
  }
  return false;
}

const Tensor& TensorStore::Get(const std::string& name,
                               const std::vector<int>& expected_shape) const {
  for (const Tensor& t : tensors) {
    if (t.name != name) continue;
    if (t.shape != expected_shape) {
      throw Error(ErrorCode::kShapeMismatch,
                  "tensor '" + name + "' has an unexpected shape");
    }
    return t;
  }
  throw Error(ErrorCode::kShapeMismatch, "missing tensor '" + name + "'");
}

void TensorStore::Save(const std::string& path) const {
  nlohmann::json manifest;
  manifest["version"] = kVersion;
  manifest["scalars"] = scalars;
  manifest["tensors"] = nlohmann::json::array();
  for (const Tensor& t : tensors) {
    manifest["tensors"].push_back({{"name", t.name}, {"shape", t.shape}});
  }
  std::string header = manifest.dump();

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out.write(kMagic, 4);
  uint32_t version = kVersion;
  out.write(reinterpret_cast<const char*>(&version), sizeof(version));
  uint64_t header_len = header.size();
  out.write(reinterpret_cast<const char*>(&header_len), sizeof(header_len));
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  for (const Tensor& t : tensors) {
    out.write(reinterpret_cast<const char*>(t.data.data()),
              static_cast<std::streamsize>(t.data.size() * sizeof(float)));
  }
  if (!out) throw Error(ErrorCode::kIoError, "short write to " + path);
}

TensorStore TensorStore::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path);

  char magic[4];
  uint32_t version = 0;
  uint64_t header_len = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), sizeof(version));
  in.read(reinterpret_cast<char*>(&header_len), sizeof(header_len));
  if (!in || std::string(magic, 4) != std::string(kMagic, 4) ||
      version != kVersion) {
    throw Error(ErrorCode::kIoError, "not a tensor store file: " + path);
  }
  std::string header(header_len, '\0');
  in.read(header.data(), static_cast<std::streamsize>(header_len));
  nlohmann::json manifest = nlohmann::json::parse(header);

  TensorStore store;
  for (auto& [key, value] : manifest["scalars"].items()) {
    store.scalars[key] = value.get<double>();
  }
  for (const auto& entry : manifest["tensors"]) {
    Tensor t;
    t.name = entry["name"].get<std::string>();
    t.shape = entry["shape"].get<std::vector<int>>();
    t.data.resize(t.NumElements());
    in.read(reinterpret_cast<char*>(t.data.data()),
            static_cast<std::streamsize>(t.data.size() * sizeof(float)));
    store.tensors.push_back(std::move(t));
  }
  if (!in) throw Error(ErrorCode::kIoError, "truncated tensor store: " + path);
  return store;
}

}  // namespace policy
}  // namespace leortc
