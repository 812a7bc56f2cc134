#include "igrm/baselines/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

namespace igrm::baselines {

namespace {

// Observed mean for continuous columns, most frequent category (lowest
// index on ties) for discrete ones.
std::vector<real> column_statistics(const data::TabularDataset& ds) {
  const auto m = static_cast<int64_t>(ds.columns.size());
  std::vector<real> stat(m, 0);
  for (int64_t c = 0; c < m; ++c) {
    if (ds.columns[c].kind == data::ColumnKind::discrete) {
      std::vector<int64_t> counts(ds.columns[c].categories.size(), 0);
      for (int64_t i = 0; i < ds.n_rows; ++i)
        if (ds.observed(i, c))
          ++counts[static_cast<size_t>(std::llround(ds.value_at(i, c)))];
      const auto best = std::max_element(counts.begin(), counts.end());
      require(best != counts.end() && *best > 0,
              "impute: column '", ds.columns[c].name, "' has no observed cells");
      stat[c] = static_cast<real>(best - counts.begin());
    } else {
      real sum = 0;
      int64_t cnt = 0;
      for (int64_t i = 0; i < ds.n_rows; ++i)
        if (ds.observed(i, c)) {
          sum += ds.value_at(i, c);
          ++cnt;
        }
      require(cnt > 0, "impute: column '", ds.columns[c].name,
              "' has no observed cells");
      stat[c] = sum / static_cast<real>(cnt);
    }
  }
  return stat;
}

}  // namespace

std::vector<real> impute_mean(const data::TabularDataset& ds) {
  ds.validate();
  const auto stat = column_statistics(ds);
  std::vector<real> out = ds.values;
  for (int64_t i = 0; i < ds.n_rows; ++i)
    for (int64_t c = 0; c < static_cast<int64_t>(ds.columns.size()); ++c)
      if (!ds.observed(i, c)) out[ds.idx(i, c)] = stat[c];
  return out;
}

std::vector<real> impute_knn(const data::TabularDataset& ds, int64_t k) {
  ds.validate();
  require(k >= 1, "impute_knn: k must be >= 1, got ", k);
  const auto stat = column_statistics(ds);
  const int64_t n = ds.n_rows;
  const auto m = static_cast<int64_t>(ds.columns.size());
  std::vector<real> out = ds.values;

  std::vector<real> dist(n);
  std::vector<int64_t> order;
  for (int64_t i = 0; i < n; ++i) {
    bool any_missing = false;
    for (int64_t c = 0; c < m && !any_missing; ++c)
      any_missing = !ds.observed(i, c);
    if (!any_missing) continue;

    for (int64_t j = 0; j < n; ++j) {
      if (j == i) {
        dist[j] = std::numeric_limits<real>::infinity();
        continue;
      }
      real ss = 0;
      int64_t overlap = 0;
      for (int64_t c = 0; c < m; ++c)
        if (ds.observed(i, c) && ds.observed(j, c)) {
          const real d = ds.value_at(i, c) - ds.value_at(j, c);
          ss += d * d;
          ++overlap;
        }
      dist[j] = overlap ? std::sqrt(ss / static_cast<real>(overlap))
                        : std::numeric_limits<real>::infinity();
    }

    for (int64_t c = 0; c < m; ++c) {
      if (ds.observed(i, c)) continue;
      order.clear();
      for (int64_t j = 0; j < n; ++j)
        if (std::isfinite(dist[j]) && ds.observed(j, c)) order.push_back(j);
      if (order.empty()) {
        out[ds.idx(i, c)] = stat[c];
        continue;
      }
      const auto take = std::min<size_t>(order.size(), static_cast<size_t>(k));
      std::partial_sort(order.begin(), order.begin() + take, order.end(),
                        [&](int64_t a, int64_t b) {
                          return dist[a] != dist[b] ? dist[a] < dist[b] : a < b;
                        });
      if (ds.columns[c].kind == data::ColumnKind::discrete) {
        std::map<int64_t, int64_t> votes;
        for (size_t t = 0; t < take; ++t)
          ++votes[static_cast<int64_t>(std::llround(
              ds.value_at(order[t], c)))];
        int64_t best_cls = 0, best_cnt = -1;
        for (const auto& [cls, cnt] : votes)
          if (cnt > best_cnt) {
            best_cls = cls;
            best_cnt = cnt;
          }
        out[ds.idx(i, c)] = static_cast<real>(best_cls);
      } else {
        real sum = 0;
        for (size_t t = 0; t < take; ++t) sum += ds.value_at(order[t], c);
        out[ds.idx(i, c)] = sum / static_cast<real>(take);
      }
    }
  }
  return out;
}

}  // namespace igrm::baselines
