#pragma once

#include <string>
#include <utility>
#include <vector>

#include "igrm/num/tensor.hpp"

namespace igrm::model {

// Flat named-tensor container: magic, version, tensor count, then for each
// tensor its name, dims and row-major little-endian 64-bit float payload.
void save_checkpoint(
    const std::string& path,
    const std::vector<std::pair<std::string, num::Tensor>>& tensors);

struct LoadedTensor {
  std::string name;
  int64_t rows = 0, cols = 0;
  std::vector<real> values;
};

std::vector<LoadedTensor> load_checkpoint(const std::string& path);

// Copies loaded values into same-named tensors; every destination must be
// matched with identical shape.
void restore_checkpoint(
    const std::vector<std::pair<std::string, num::Tensor>>& dst,
    const std::vector<LoadedTensor>& src);

}  // namespace igrm::model
