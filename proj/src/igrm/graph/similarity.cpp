#include "igrm/graph/similarity.hpp"

#include <cmath>

namespace igrm::graph {

std::optional<real> masked_cosine(const data::TabularDataset& ds, int64_t i,
                                  int64_t j) {
  require(i >= 0 && i < ds.n_rows && j >= 0 && j < ds.n_rows,
          "masked_cosine: rows (", i, ",", j, ") outside 0..", ds.n_rows - 1);
  real dot = 0, ni = 0, nj = 0;
  bool any = false;
  for (int64_t c = 0; c < ds.n_cols(); ++c) {
    if (!ds.observed(i, c) || !ds.observed(j, c)) continue;
    any = true;
    real a = ds.value_at(i, c);
    real b = ds.value_at(j, c);
    dot += a * b;
    ni += a * a;
    nj += b * b;
  }
  if (!any || ni == real(0) || nj == real(0)) return std::nullopt;
  return dot / (std::sqrt(ni) * std::sqrt(nj));
}

}  // namespace igrm::graph
