#ifndef LEORTC_POLICY_TENSOR_STORE_H_
#define LEORTC_POLICY_TENSOR_STORE_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace leortc {
namespace policy {

struct Tensor {
  std::string name;
  std::vector<int> shape;
  std::vector<float> data;

  int64_t NumElements() const {
    int64_t n = 1;
    for (int d : shape) n *= d;
    return n;
  }
};

// Portable container for model artifacts: a JSON manifest (tensor names,
// shapes, scalar hyperparameters) followed by raw little-endian float32
// payloads in manifest order.
struct TensorStore {
  std::map<std::string, double> scalars;
  std::vector<Tensor> tensors;

  void Add(const std::string& name, std::vector<int> shape,
           std::vector<float> data);
  bool Has(const std::string& name) const;
  // Throws Error(kShapeMismatch) when absent or shaped differently.
  const Tensor& Get(const std::string& name,
                    const std::vector<int>& expected_shape) const;

  void Save(const std::string& path) const;
  static TensorStore Load(const std::string& path);
};

}  // namespace policy
}  // namespace leortc

#endif  // LEORTC_POLICY_TENSOR_STORE_H_
