#pragma once

#include <cstdint>
#include <vector>

#include "igrm/data/dataset.hpp"

namespace igrm::baselines {

// Column-wise fill: continuous columns take the observed mean, discrete
// columns the most frequent category (lowest index on ties). Errors on a
// column with no observed cells. Returns the completed row-major table.
std::vector<real> impute_mean(const data::TabularDataset& ds);

// k-nearest-neighbour fill under a masked Euclidean metric: distances are
// root-mean-square over the columns observed in both rows; rows sharing no
// observed column are not candidates. Neighbour ties break on row index.
// Cells with no eligible neighbour fall back to the column mean / mode.
std::vector<real> impute_knn(const data::TabularDataset& ds, int64_t k = 5);

}  // namespace igrm::baselines
