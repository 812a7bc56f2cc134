#include "igrm/data/discretize.hpp"

#include <limits>

namespace igrm::data {

Discretization discretize_db(const std::vector<real>& values, int64_t k_min,
                             int64_t k_max) {
  require(k_min >= 2 && k_max >= k_min, "discretize: bad bin range ", k_min,
          "..", k_max);
  require(static_cast<int64_t>(values.size()) >= k_min, "discretize: only ",
          values.size(), " values for at least ", k_min, " bins");

  Discretization best;
  real best_db = std::numeric_limits<real>::infinity();
  for (int64_t k = k_min;
       k <= std::min<int64_t>(k_max, static_cast<int64_t>(values.size()));
       ++k) {
    KMeansResult clustering = kmeans_1d(values, k);
    real db = davies_bouldin_1d(values, clustering);
    if (db < best_db) {  // strict: ties keep the smaller k seen first
      best_db = db;
      best.n_bins = clustering.k;
      best.bins = std::move(clustering.labels);
      best.db_index = db;
    }
  }
  if (best.n_bins == 0) {
    // Every candidate collapsed (constant column): a single bin.
    best.n_bins = 1;
    best.bins.assign(values.size(), 0);
    best.db_index = 0;
  }
  return best;
}

}  // namespace igrm::data
