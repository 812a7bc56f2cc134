#pragma once

#include <vector>

#include "igrm/num/tensor.hpp"

namespace igrm::num {

struct AdamConfig {
  real lr = 1e-3;
  real beta1 = 0.9;
  real beta2 = 0.999;
  real eps = 1e-8;
};

// Adam with bias correction over a fixed parameter list. step() consumes
// the gradients populated by backward(); zero_grad() clears them for the
// next tape.
class Adam {
 public:
  Adam(std::vector<Tensor> params, AdamConfig cfg = {});

  void step();
  void zero_grad();
  int64_t steps() const { return t_; }

 private:
  std::vector<Tensor> params_;
  std::vector<std::vector<real>> m_, v_;
  AdamConfig cfg_;
  int64_t t_ = 0;
};

}  // namespace igrm::num
