#include "igrm/data/scale.hpp"

#include <cmath>
#include <limits>

namespace igrm::data {

MinMaxScaler fit_scaler(const TabularDataset& ds) {
  MinMaxScaler s;
  const int64_t m = ds.n_cols();
  s.col_min.assign(static_cast<size_t>(m), real(0));
  s.col_max.assign(static_cast<size_t>(m), real(0));
  for (int64_t c = 0; c < m; ++c) {
    if (ds.columns[static_cast<size_t>(c)].kind != ColumnKind::continuous)
      continue;
    real lo = std::numeric_limits<real>::infinity();
    real hi = -std::numeric_limits<real>::infinity();
    for (int64_t r = 0; r < ds.n_rows; ++r) {
      if (!ds.observed(r, c)) continue;
      lo = std::min(lo, ds.value_at(r, c));
      hi = std::max(hi, ds.value_at(r, c));
    }
    if (!(lo <= hi))
      fail(ErrorCode::invalid_argument, "scale: column '",
           ds.columns[static_cast<size_t>(c)].name,
           "' has no observed values to fit");
    s.col_min[static_cast<size_t>(c)] = lo;
    s.col_max[static_cast<size_t>(c)] = hi;
  }
  return s;
}

real scale_value(const MinMaxScaler& s, int64_t col, real v) {
  real lo = s.col_min[static_cast<size_t>(col)];
  real hi = s.col_max[static_cast<size_t>(col)];
  real range = hi - lo;
  if (range == real(0)) return real(0);
  return (v - lo) / range;
}

real inverse_scale_value(const MinMaxScaler& s, int64_t col, real v) {
  real lo = s.col_min[static_cast<size_t>(col)];
  real hi = s.col_max[static_cast<size_t>(col)];
  return v * (hi - lo) + lo;
}

TabularDataset scale(const TabularDataset& ds, const MinMaxScaler& s) {
  require(static_cast<int64_t>(s.col_min.size()) == ds.n_cols(),
          "scale: scaler fitted on ", s.col_min.size(),
          " columns, dataset has ", ds.n_cols());
  TabularDataset out = ds;
  for (int64_t c = 0; c < ds.n_cols(); ++c) {
    if (ds.columns[static_cast<size_t>(c)].kind != ColumnKind::continuous)
      continue;
    for (int64_t r = 0; r < ds.n_rows; ++r) {
      size_t i = ds.idx(r, c);
      if (out.mask[i]) out.values[i] = scale_value(s, c, out.values[i]);
      if (out.ground_truth && out.ground_truth->mask[i])
        out.ground_truth->values[i] =
            scale_value(s, c, out.ground_truth->values[i]);
    }
  }
  return out;
}

std::pair<TabularDataset, MinMaxScaler> scale(const TabularDataset& ds) {
  MinMaxScaler s = fit_scaler(ds);
  return {scale(ds, s), s};
}

}  // namespace igrm::data
