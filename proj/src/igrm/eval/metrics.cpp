#include "igrm/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "igrm/num/rng.hpp"

namespace igrm::eval {

real imputation_mae(const data::TabularDataset& ds,
                    const std::vector<real>& imputed) {
  ds.validate();
  require(ds.ground_truth.has_value(), "mae: dataset has no ground truth");
  require(imputed.size() == ds.values.size(),
          "mae: completed table has ", imputed.size(), " cells, expected ",
          ds.values.size());
  const auto& gt = *ds.ground_truth;
  real total = 0;
  int64_t cnt = 0;
  for (int64_t i = 0; i < ds.n_rows; ++i)
    for (int64_t c = 0; c < static_cast<int64_t>(ds.columns.size()); ++c) {
      const auto k = ds.idx(i, c);
      if (ds.mask[k] != 0 || gt.mask[k] == 0) continue;
      if (ds.columns[c].kind == data::ColumnKind::discrete)
        total += std::llround(imputed[k]) == std::llround(gt.values[k])
                     ? real(0)
                     : real(1);
      else
        total += std::abs(imputed[k] - gt.values[k]);
      ++cnt;
    }
  require(cnt > 0, "mae: no hidden cell has ground truth");
  return total / static_cast<real>(cnt);
}

namespace {

real euclidean(const std::vector<real>& x, int64_t d, int64_t a, int64_t b) {
  real ss = 0;
  for (int64_t k = 0; k < d; ++k) {
    const real diff = x[a * d + k] - x[b * d + k];
    ss += diff * diff;
  }
  return std::sqrt(ss);
}

}  // namespace

real silhouette(const std::vector<real>& points, int64_t n, int64_t d,
                const std::vector<int64_t>& labels) {
  require(n >= 2, "silhouette: need at least 2 points, got ", n);
  require(static_cast<int64_t>(labels.size()) == n,
          "silhouette: expected ", n, " labels, got ", labels.size());
  require(static_cast<int64_t>(points.size()) == n * d,
          "silhouette: point buffer size mismatch");
  const int64_t k =
      labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  require(k >= 2, "silhouette: need at least 2 clusters");
  std::vector<int64_t> sizes(k, 0);
  for (const auto l : labels) {
    require(l >= 0 && l < k, "silhouette: label out of range");
    ++sizes[l];
  }

  real total = 0;
  std::vector<real> cluster_dist(k);
  for (int64_t i = 0; i < n; ++i) {
    if (sizes[labels[i]] == 1) continue;  // singleton contributes 0
    std::fill(cluster_dist.begin(), cluster_dist.end(), real(0));
    for (int64_t j = 0; j < n; ++j)
      if (j != i) cluster_dist[labels[j]] += euclidean(points, d, i, j);
    const real a =
        cluster_dist[labels[i]] / static_cast<real>(sizes[labels[i]] - 1);
    real b = std::numeric_limits<real>::infinity();
    for (int64_t c = 0; c < k; ++c)
      if (c != labels[i] && sizes[c] > 0)
        b = std::min(b, cluster_dist[c] / static_cast<real>(sizes[c]));
    const real denom = std::max(a, b);
    if (denom > 0) total += (b - a) / denom;
  }
  return total / static_cast<real>(n);
}

namespace {

std::vector<real> row_norms(const std::vector<real>& x, int64_t n, int64_t d) {
  std::vector<real> norms(n);
  for (int64_t i = 0; i < n; ++i) {
    real ss = 0;
    for (int64_t k = 0; k < d; ++k) ss += x[i * d + k] * x[i * d + k];
    norms[i] = std::sqrt(ss);
  }
  return norms;
}

real pair_cosine(const std::vector<real>& x, int64_t d, int64_t i, int64_t j,
                 const std::vector<real>& norms) {
  if (norms[i] == 0 || norms[j] == 0) return 0;
  real dot = 0;
  for (int64_t k = 0; k < d; ++k) dot += x[i * d + k] * x[j * d + k];
  return dot / (norms[i] * norms[j]);
}

}  // namespace

PairDeviation similarity_deviation(const std::vector<real>& emb, int64_t n,
                                   int64_t d_emb, const std::vector<real>& ref,
                                   int64_t d_ref, int64_t n_bins,
                                   int64_t exact_limit, uint64_t seed) {
  require(n >= 2, "similarity_deviation: need at least 2 rows, got ", n);
  require(n_bins >= 1, "similarity_deviation: need at least 1 bin");
  require(static_cast<int64_t>(emb.size()) == n * d_emb,
          "similarity_deviation: embedding buffer size mismatch");
  require(static_cast<int64_t>(ref.size()) == n * d_ref,
          "similarity_deviation: reference buffer size mismatch");

  const auto norms_e = row_norms(emb, n, d_emb);
  const auto norms_r = row_norms(ref, n, d_ref);
  PairDeviation out;
  out.bins.assign(n_bins, 0);
  real total = 0;
  const auto tally = [&](int64_t i, int64_t j) {
    const real dev = std::abs(pair_cosine(emb, d_emb, i, j, norms_e) -
                              pair_cosine(ref, d_ref, i, j, norms_r));
    total += dev;
    const auto bin =
        std::clamp<int64_t>(static_cast<int64_t>(dev * n_bins), 0, n_bins - 1);
    ++out.bins[bin];
    ++out.n_pairs;
  };
  if (n <= exact_limit) {
    for (int64_t i = 0; i + 1 < n; ++i)
      for (int64_t j = i + 1; j < n; ++j) tally(i, j);
  } else {
    num::Rng rng(seed);
    const int64_t budget = exact_limit * (exact_limit - 1) / 2;
    for (int64_t t = 0; t < budget; ++t) {
      const auto i = static_cast<int64_t>(rng.uniform_int(n));
      auto j = static_cast<int64_t>(rng.uniform_int(n - 1));
      if (j >= i) ++j;
      tally(i, j);
    }
  }
  out.mean = total / static_cast<real>(out.n_pairs);
  return out;
}

std::vector<real> ground_truth_table(const data::TabularDataset& ds) {
  ds.validate();
  require(ds.ground_truth.has_value(),
          "ground_truth_table: dataset has no ground truth");
  std::vector<real> out = ds.values;
  const auto& gt = *ds.ground_truth;
  const auto m = static_cast<int64_t>(ds.columns.size());

  // Cells hidden in the source table itself have no recorded truth; they
  // take a per-column statistic over everything known (observed cells plus
  // restored ones) — the mean, or the modal category for discrete columns.
  std::vector<char> pending(out.size(), 0);
  bool any_pending = false;
  for (size_t k = 0; k < out.size(); ++k)
    if (ds.mask[k] == 0) {
      if (gt.mask[k] != 0) {
        out[k] = gt.values[k];
      } else {
        pending[k] = 1;
        any_pending = true;
      }
    }
  if (!any_pending) return out;

  for (int64_t c = 0; c < m; ++c) {
    real fill = 0;
    if (ds.columns[static_cast<size_t>(c)].kind ==
        data::ColumnKind::discrete) {
      std::map<int64_t, int64_t> votes;
      for (int64_t i = 0; i < ds.n_rows; ++i) {
        const auto k = ds.idx(i, c);
        if (!pending[k]) ++votes[static_cast<int64_t>(std::llround(out[k]))];
      }
      int64_t best_cnt = -1;
      for (const auto& [cls, cnt] : votes)
        if (cnt > best_cnt) {
          fill = static_cast<real>(cls);
          best_cnt = cnt;
        }
    } else {
      real sum = 0;
      int64_t cnt = 0;
      for (int64_t i = 0; i < ds.n_rows; ++i) {
        const auto k = ds.idx(i, c);
        if (!pending[k]) {
          sum += out[k];
          ++cnt;
        }
      }
      if (cnt > 0) fill = sum / static_cast<real>(cnt);
    }
    for (int64_t i = 0; i < ds.n_rows; ++i) {
      const auto k = ds.idx(i, c);
      if (pending[k]) out[k] = fill;
    }
  }
  return out;
}

}  // namespace igrm::eval
