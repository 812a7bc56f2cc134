#include "igrm/data/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "igrm/num/rng.hpp"

namespace igrm::data {

namespace {

real sqdist(const real* a, const real* b, int64_t d) {
  real acc = 0;
  for (int64_t j = 0; j < d; ++j) {
    real diff = a[j] - b[j];
    acc += diff * diff;
  }
  return acc;
}

}  // namespace

KMeansResult kmeans(const std::vector<real>& points, int64_t n, int64_t d,
                    int64_t k, uint64_t seed, int64_t max_iter) {
  require(n > 0 && d > 0, "kmeans: empty input (", n, "x", d, ")");
  require(static_cast<int64_t>(points.size()) == n * d,
          "kmeans: point buffer holds ", points.size(), " values, expected ",
          n * d);
  require(k >= 1 && k <= n, "kmeans: k=", k, " outside 1..", n);

  num::Rng rng(seed);
  std::vector<real> centroids(static_cast<size_t>(k * d));
  std::vector<real> dist2(static_cast<size_t>(n),
                          std::numeric_limits<real>::infinity());

  // k-means++ seeding.
  int64_t first = rng.uniform_int(n);
  std::copy_n(points.begin() + first * d, d, centroids.begin());
  for (int64_t c = 1; c < k; ++c) {
    real total = 0;
    for (int64_t i = 0; i < n; ++i) {
      real d2 = sqdist(&points[static_cast<size_t>(i * d)],
                       &centroids[static_cast<size_t>((c - 1) * d)], d);
      dist2[static_cast<size_t>(i)] =
          std::min(dist2[static_cast<size_t>(i)], d2);
      total += dist2[static_cast<size_t>(i)];
    }
    int64_t pick = 0;
    if (total > 0) {
      real target = rng.uniform() * total;
      real acc = 0;
      for (int64_t i = 0; i < n; ++i) {
        acc += dist2[static_cast<size_t>(i)];
        if (acc >= target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = rng.uniform_int(n);
    }
    std::copy_n(points.begin() + pick * d, d,
                centroids.begin() + c * d);
  }

  std::vector<int64_t> labels(static_cast<size_t>(n), 0);
  std::vector<int64_t> counts(static_cast<size_t>(k), 0);
  for (int64_t it = 0; it < max_iter; ++it) {
    bool changed = false;
    for (int64_t i = 0; i < n; ++i) {
      real best = std::numeric_limits<real>::infinity();
      int64_t arg = 0;
      for (int64_t c = 0; c < k; ++c) {
        real d2 = sqdist(&points[static_cast<size_t>(i * d)],
                         &centroids[static_cast<size_t>(c * d)], d);
        if (d2 < best) {
          best = d2;
          arg = c;
        }
      }
      if (labels[static_cast<size_t>(i)] != arg) {
        labels[static_cast<size_t>(i)] = arg;
        changed = true;
      }
    }
    std::fill(centroids.begin(), centroids.end(), real(0));
    std::fill(counts.begin(), counts.end(), 0);
    for (int64_t i = 0; i < n; ++i) {
      int64_t c = labels[static_cast<size_t>(i)];
      ++counts[static_cast<size_t>(c)];
      for (int64_t j = 0; j < d; ++j)
        centroids[static_cast<size_t>(c * d + j)] +=
            points[static_cast<size_t>(i * d + j)];
    }
    for (int64_t c = 0; c < k; ++c) {
      if (counts[static_cast<size_t>(c)] > 0) {
        for (int64_t j = 0; j < d; ++j)
          centroids[static_cast<size_t>(c * d + j)] /=
              static_cast<real>(counts[static_cast<size_t>(c)]);
      } else {
        // Reseed an emptied cluster to the point farthest from its label.
        real far_d = -1;
        int64_t far_i = 0;
        for (int64_t i = 0; i < n; ++i) {
          real d2 = sqdist(
              &points[static_cast<size_t>(i * d)],
              &centroids[static_cast<size_t>(labels[static_cast<size_t>(i)] * d)],
              d);
          if (d2 > far_d) {
            far_d = d2;
            far_i = i;
          }
        }
        std::copy_n(points.begin() + far_i * d, d, centroids.begin() + c * d);
        changed = true;
      }
    }
    if (!changed && it > 0) break;
  }

  KMeansResult res;
  res.k = k;
  res.d = d;
  res.labels = std::move(labels);
  res.centroids = std::move(centroids);
  res.inertia = 0;
  for (int64_t i = 0; i < n; ++i)
    res.inertia += sqdist(
        &points[static_cast<size_t>(i * d)],
        &res.centroids[static_cast<size_t>(res.labels[static_cast<size_t>(i)] * d)],
        d);
  return res;
}

KMeansResult kmeans_1d(const std::vector<real>& values, int64_t k,
                       int64_t max_iter) {
  const int64_t n = static_cast<int64_t>(values.size());
  require(n > 0, "kmeans_1d: empty input");
  require(k >= 1 && k <= n, "kmeans_1d: k=", k, " outside 1..", n);

  std::vector<real> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  std::vector<real> centroids(static_cast<size_t>(k));
  for (int64_t c = 0; c < k; ++c) {
    // Evenly spaced quantiles (midpoints of k equal probability slices).
    real q = (static_cast<real>(c) + real(0.5)) / static_cast<real>(k);
    auto pos = static_cast<int64_t>(q * static_cast<real>(n));
    pos = std::min(pos, n - 1);
    centroids[static_cast<size_t>(c)] = sorted[static_cast<size_t>(pos)];
  }

  std::vector<int64_t> labels(static_cast<size_t>(n), 0);
  std::vector<real> sums(static_cast<size_t>(k));
  std::vector<int64_t> counts(static_cast<size_t>(k));
  for (int64_t it = 0; it < max_iter; ++it) {
    bool changed = false;
    for (int64_t i = 0; i < n; ++i) {
      real best = std::numeric_limits<real>::infinity();
      int64_t arg = 0;
      for (int64_t c = 0; c < k; ++c) {
        real diff = values[static_cast<size_t>(i)] -
                    centroids[static_cast<size_t>(c)];
        real d2 = diff * diff;
        if (d2 < best) {
          best = d2;
          arg = c;
        }
      }
      if (labels[static_cast<size_t>(i)] != arg) {
        labels[static_cast<size_t>(i)] = arg;
        changed = true;
      }
    }
    std::fill(sums.begin(), sums.end(), real(0));
    std::fill(counts.begin(), counts.end(), 0);
    for (int64_t i = 0; i < n; ++i) {
      sums[static_cast<size_t>(labels[static_cast<size_t>(i)])] +=
          values[static_cast<size_t>(i)];
      ++counts[static_cast<size_t>(labels[static_cast<size_t>(i)])];
    }
    for (int64_t c = 0; c < k; ++c)
      if (counts[static_cast<size_t>(c)] > 0)
        centroids[static_cast<size_t>(c)] =
            sums[static_cast<size_t>(c)] /
            static_cast<real>(counts[static_cast<size_t>(c)]);
    if (!changed && it > 0) break;
  }

  // Compact to populated clusters, ordered by centroid.
  std::vector<int64_t> order;
  for (int64_t c = 0; c < k; ++c) {
    bool used = false;
    for (int64_t i = 0; i < n; ++i)
      if (labels[static_cast<size_t>(i)] == c) {
        used = true;
        break;
      }
    if (used) order.push_back(c);
  }
  std::sort(order.begin(), order.end(), [&](int64_t a, int64_t b) {
    return centroids[static_cast<size_t>(a)] < centroids[static_cast<size_t>(b)];
  });
  std::vector<int64_t> remap(static_cast<size_t>(k), -1);
  for (size_t newc = 0; newc < order.size(); ++newc)
    remap[static_cast<size_t>(order[newc])] = static_cast<int64_t>(newc);

  KMeansResult res;
  res.k = static_cast<int64_t>(order.size());
  res.d = 1;
  res.labels.resize(static_cast<size_t>(n));
  res.centroids.resize(order.size());
  for (size_t newc = 0; newc < order.size(); ++newc)
    res.centroids[newc] = centroids[static_cast<size_t>(order[newc])];
  res.inertia = 0;
  for (int64_t i = 0; i < n; ++i) {
    int64_t c = remap[static_cast<size_t>(labels[static_cast<size_t>(i)])];
    res.labels[static_cast<size_t>(i)] = c;
    real diff =
        values[static_cast<size_t>(i)] - res.centroids[static_cast<size_t>(c)];
    res.inertia += diff * diff;
  }
  return res;
}

real davies_bouldin_1d(const std::vector<real>& values,
                       const KMeansResult& clustering) {
  const int64_t k = clustering.k;
  if (k < 2) return std::numeric_limits<real>::infinity();
  std::vector<real> scatter(static_cast<size_t>(k), real(0));
  std::vector<int64_t> counts(static_cast<size_t>(k), 0);
  for (size_t i = 0; i < values.size(); ++i) {
    int64_t c = clustering.labels[i];
    scatter[static_cast<size_t>(c)] +=
        std::abs(values[i] - clustering.centroids[static_cast<size_t>(c)]);
    ++counts[static_cast<size_t>(c)];
  }
  for (int64_t c = 0; c < k; ++c)
    scatter[static_cast<size_t>(c)] /=
        static_cast<real>(std::max<int64_t>(1, counts[static_cast<size_t>(c)]));
  real db = 0;
  for (int64_t i = 0; i < k; ++i) {
    real worst = 0;
    for (int64_t j = 0; j < k; ++j) {
      if (i == j) continue;
      real sep = std::abs(clustering.centroids[static_cast<size_t>(i)] -
                          clustering.centroids[static_cast<size_t>(j)]);
      real r = sep > 0 ? (scatter[static_cast<size_t>(i)] +
                          scatter[static_cast<size_t>(j)]) /
                             sep
                       : std::numeric_limits<real>::infinity();
      worst = std::max(worst, r);
    }
    db += worst;
  }
  return db / static_cast<real>(k);
}

}  // namespace igrm::data
