#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <doctest.h>

#include "igrm/num/ops.hpp"
#include "igrm/num/rng.hpp"

namespace igrm::test {

using num::Tensor;

inline Tensor random_tensor(int64_t rows, int64_t cols, num::Rng& rng,
                            bool requires_grad = true, real lo = -1,
                            real hi = 1) {
  std::vector<real> v(static_cast<size_t>(rows * cols));
  for (auto& x : v) x = rng.uniform(lo, hi);
  return Tensor::from_values(rows, cols, std::move(v), requires_grad);
}

// Central-difference gradient check: rebuilds the graph per probe via
// `forward` (inputs are leaves, so their values persist across rebuilds).
// Returns the largest relative error over every input coordinate, where
// the scale mixes absolute and relative tolerance.
inline real fd_max_rel_error(const std::vector<Tensor>& inputs,
                             const std::function<Tensor()>& forward,
                             real step = 1e-5) {
  Tensor loss = forward();
  REQUIRE(loss.numel() == 1);
  for (const auto& in : inputs) in.node()->grad.clear();
  num::backward(loss);

  std::vector<std::vector<real>> analytic;
  for (const auto& in : inputs) {
    REQUIRE(in.has_grad());
    analytic.push_back(in.grad());
  }

  real worst = 0;
  for (size_t t = 0; t < inputs.size(); ++t) {
    Tensor in = inputs[t];  // shared handle: mutates the caller's buffer
    auto& vals = in.values();
    for (size_t k = 0; k < vals.size(); ++k) {
      const real keep = vals[k];
      vals[k] = keep + step;
      const real up = forward().scalar_value();
      vals[k] = keep - step;
      const real down = forward().scalar_value();
      vals[k] = keep;
      const real numeric = (up - down) / (2 * step);
      const real denom =
          std::max({std::abs(numeric), std::abs(analytic[t][k]), real(1e-3)});
      worst = std::max(worst, std::abs(numeric - analytic[t][k]) / denom);
    }
  }
  return worst;
}

}  // namespace igrm::test
