#include "igrm/model/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace igrm::model {

using namespace num;

namespace {
constexpr real kProbFloor = 1e-9;
constexpr real kMaskedLogit = -1e30;
}  // namespace

std::vector<std::pair<int32_t, int32_t>> SampleResult::hard_edges() const {
  std::vector<std::pair<int32_t, int32_t>> edges;
  edges.reserve(draw_row.size());
  for (size_t d = 0; d < draw_row.size(); ++d) {
    auto i = static_cast<int32_t>(std::min(draw_row[d], draw_col[d]));
    auto j = static_cast<int32_t>(std::max(draw_row[d], draw_col[d]));
    edges.emplace_back(i, j);
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

SampleResult sample_structure(const Tensor& m_prob, real tau, int64_t budget,
                              num::Rng& rng, bool zero_noise) {
  require(m_prob.defined() && m_prob.rows() == m_prob.cols(),
          "sample_structure: M must be square, got ", shape_str(m_prob));
  const int64_t n = m_prob.rows();
  require(n >= 2, "sample_structure: need at least 2 samples, got ", n);
  require(tau > 0, "sample_structure: temperature must be positive, got ",
          tau);
  require(budget >= 1, "sample_structure: edge budget must be >= 1, got ",
          budget);
  const int64_t budget_eff = std::min(budget, n * (n - 1) / 2);

  // Decision phase on raw values; the tape only sees accepted draws.
  const auto& mv = m_prob.values();
  std::vector<real> logm(mv.size());
  for (size_t i = 0; i < mv.size(); ++i)
    logm[i] = std::log(std::clamp(mv[i], kProbFloor, real(1) - kProbFloor));

  SampleResult res;
  std::set<std::pair<int32_t, int32_t>> seen;
  std::vector<real> accepted_noise;
  std::vector<real> g(static_cast<size_t>(n));
  // A full sweep adds at least ~n/2 new edges while the budget is short of
  // the pair count, so this cap is never the limiting factor in practice.
  const int64_t max_rounds = 200;
  while (static_cast<int64_t>(seen.size()) < budget_eff &&
         res.rounds < max_rounds) {
    ++res.rounds;
    for (int64_t r = 0;
         r < n && static_cast<int64_t>(seen.size()) < budget_eff; ++r) {
      for (int64_t j = 0; j < n; ++j)
        g[static_cast<size_t>(j)] = zero_noise ? real(0) : rng.gumbel();
      g[static_cast<size_t>(r)] = kMaskedLogit;
      int64_t arg = r == 0 ? 1 : 0;
      real best = -std::numeric_limits<real>::infinity();
      for (int64_t j = 0; j < n; ++j) {
        if (j == r) continue;
        real v = logm[static_cast<size_t>(r * n + j)] +
                 g[static_cast<size_t>(j)];
        if (v > best) {
          best = v;
          arg = j;
        }
      }
      auto a = static_cast<int32_t>(std::min(r, arg));
      auto b = static_cast<int32_t>(std::max(r, arg));
      if (!seen.insert({a, b}).second) continue;  // duplicate: discard draw
      res.draw_row.push_back(r);
      res.draw_col.push_back(arg);
      accepted_noise.insert(accepted_noise.end(), g.begin(), g.end());
    }
  }

  const auto n_draws = static_cast<int64_t>(res.draw_row.size());
  require(n_draws > 0, "sample_structure: no draws accepted");

  Tensor mc = clamp(m_prob, kProbFloor, real(1) - kProbFloor);
  Tensor logits = log_(mc);
  Tensor noise = Tensor::from_values(n_draws, n, std::move(accepted_noise));
  res.relaxed =
      row_softmax(add(gather_rows(logits, res.draw_row), noise), tau);

  std::vector<int64_t> draw_idx(static_cast<size_t>(n_draws));
  for (int64_t d = 0; d < n_draws; ++d) draw_idx[static_cast<size_t>(d)] = d;
  Tensor st_cells = gather_cells(res.relaxed, draw_idx, res.draw_col);
  res.st = straight_through(
      st_cells, std::vector<real>(static_cast<size_t>(n_draws), real(1)));
  return res;
}

}  // namespace igrm::model
