#pragma once

#include <cstdint>
#include <vector>

#include "igrm/common.hpp"

namespace igrm::num {

// SplitMix64 generator. Chosen over std::mt19937 so that streams are
// bit-identical across standard libraries and platforms; every stochastic
// component in the library draws from this.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64();

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform();
  double uniform(double lo, double hi);

  // Uniform integer on [0, n). Rejection sampling, no modulo bias.
  int64_t uniform_int(int64_t n);

  // Standard normal via Box-Muller; second deviate of each pair is cached.
  double normal();

  // Standard Gumbel: -log(-log(u)) with u clamped away from {0, 1}.
  double gumbel();

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int64_t i = static_cast<int64_t>(v.size()) - 1; i > 0; --i) {
      int64_t j = uniform_int(i + 1);
      std::swap(v[static_cast<size_t>(i)], v[static_cast<size_t>(j)]);
    }
  }

 private:
  uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Deterministic child-stream derivation: decorrelates streams that share a
// base seed (e.g. per-trial mask vs. model-init streams).
uint64_t derive_seed(uint64_t base, uint64_t stream);

// Gumbel transform exposed for direct testing of the clamping behaviour.
double gumbel_from_uniform(double u);

}  // namespace igrm::num
