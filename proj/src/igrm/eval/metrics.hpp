#pragma once

#include <cstdint>
#include <vector>

#include "igrm/data/dataset.hpp"

namespace igrm::eval {

// Mean absolute error of a completed table against ground truth over the
// hidden cells (masked out, truth known), in the table's own value space.
// Discrete columns contribute 0/1 mismatch. Errors if no such cell exists.
real imputation_mae(const data::TabularDataset& ds,
                    const std::vector<real>& imputed);

// Mean silhouette coefficient of labelled points under the Euclidean
// metric: (b - a) / max(a, b) per point, 0 for singleton clusters.
real silhouette(const std::vector<real>& points, int64_t n, int64_t d,
                const std::vector<int64_t>& labels);

struct PairDeviation {
  real mean = 0;
  int64_t n_pairs = 0;
  std::vector<int64_t> bins;  // histogram of deviations over [0,1]
};

// Row-pair cosine similarity of `emb` compared with that of `ref`
// (same row count, independent widths): mean |cos_emb - cos_ref| over
// unordered pairs, plus a fixed-width histogram. All pairs are visited up
// to `exact_limit` rows; beyond that a seeded uniform sample of the same
// pair budget is used. Zero-norm rows take similarity 0.
PairDeviation similarity_deviation(const std::vector<real>& emb, int64_t n,
                                   int64_t d_emb, const std::vector<real>& ref,
                                   int64_t d_ref, int64_t n_bins = 20,
                                   int64_t exact_limit = 2000,
                                   uint64_t seed = 0);

// The completed table a dataset's ground truth describes: observed cells
// keep their value, hidden ones take the recorded truth. Cells that were
// already missing in the source (so no truth exists) fall back to the
// column mean, or the modal category for discrete columns, computed over
// every known cell.
std::vector<real> ground_truth_table(const data::TabularDataset& ds);

}  // namespace igrm::eval
