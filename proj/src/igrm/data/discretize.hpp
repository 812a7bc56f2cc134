#pragma once

#include "igrm/data/kmeans.hpp"

namespace igrm::data {

struct Discretization {
  int64_t n_bins = 0;
  std::vector<int64_t> bins;  // one label per input value, ordered low-to-high
  real db_index = 0;
};

// Bins a 1-D column by k-means over candidate cluster counts, keeping the
// count with the lowest Davies-Bouldin index (ties favour fewer bins).
// A constant column collapses to a single bin.
Discretization discretize_db(const std::vector<real>& values,
                             int64_t k_min = 2, int64_t k_max = 10);

}  // namespace igrm::data
