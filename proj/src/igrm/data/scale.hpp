#pragma once

#include "igrm/data/dataset.hpp"

namespace igrm::data {

// Per-continuous-column min/max over observed cells. Discrete columns keep
// placeholder stats and are never rescaled.
struct MinMaxScaler {
  std::vector<real> col_min;
  std::vector<real> col_max;
};

MinMaxScaler fit_scaler(const TabularDataset& ds);

// Maps observed continuous cells to (x - min) / (max - min); a constant
// column maps to 0 and inverts back to the constant. Ground truth, when
// present, is transformed with the same statistics.
TabularDataset scale(const TabularDataset& ds, const MinMaxScaler& s);
std::pair<TabularDataset, MinMaxScaler> scale(const TabularDataset& ds);

real scale_value(const MinMaxScaler& s, int64_t col, real v);
real inverse_scale_value(const MinMaxScaler& s, int64_t col, real v);

}  // namespace igrm::data
