#pragma once

#include <cstdint>
#include <vector>

#include "igrm/common.hpp"

namespace igrm::data {

struct KMeansResult {
  int64_t k = 0;  // clusters actually populated
  int64_t d = 0;
  std::vector<int64_t> labels;     // one per point, in 0..k-1
  std::vector<real> centroids;     // k x d, row-major
  real inertia = 0;                // sum of squared distances
};

// Lloyd's algorithm with k-means++ seeding (deterministic under seed).
// Emptied clusters are reseeded to the farthest point.
KMeansResult kmeans(const std::vector<real>& points, int64_t n, int64_t d,
                    int64_t k, uint64_t seed, int64_t max_iter = 100);

// 1-D variant with evenly spaced quantile centroids (no randomness).
// Duplicate-heavy inputs may populate fewer than k clusters; labels are
// compacted and ordered by ascending centroid.
KMeansResult kmeans_1d(const std::vector<real>& values, int64_t k,
                       int64_t max_iter = 50);

// Davies-Bouldin index of a 1-D clustering; +inf when fewer than two
// clusters are populated.
real davies_bouldin_1d(const std::vector<real>& values,
                       const KMeansResult& clustering);

}  // namespace igrm::data
