#pragma once

#include <utility>
#include <vector>

#include "igrm/num/ops.hpp"
#include "igrm/num/rng.hpp"

namespace igrm::model {

using num::Tensor;

// Differentiable structure sample drawn from an edge-probability matrix.
// Each draw perturbs one row of log M with Gumbel noise and takes a
// temperature-τ softmax; the argmax becomes a hard edge, the relaxed row
// backs its straight-through gradient. Rows are visited round-robin until
// `budget` distinct undirected edges exist (draws that rediscover an edge
// are discarded). Self-loops are excluded: a row's own logit is masked
// before the softmax, since a friend set ranges over other samples only.
struct SampleResult {
  // One accepted draw per hard edge: the draw's row and its argmax column.
  std::vector<int64_t> draw_row;
  std::vector<int64_t> draw_col;
  Tensor relaxed;  // B x n relaxed rows (tape tensor; rows sum to 1)
  Tensor st;       // B x 1, forward all-ones, gradient -> relaxed argmax cells
  int64_t rounds = 0;

  std::vector<std::pair<int32_t, int32_t>> hard_edges() const;
};

SampleResult sample_structure(const Tensor& m_prob, real tau, int64_t budget,
                              num::Rng& rng, bool zero_noise = false);

}  // namespace igrm::model
