#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "igrm/common.hpp"

namespace igrm::data {

enum class ColumnKind { continuous, discrete };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::continuous;
  // Ordered category list; discrete cells store an index into it.
  std::vector<std::string> categories;
};

// Snapshot of (values, mask) taken when a synthetic mask is injected, so
// imputations can be judged against what was hidden.
struct GroundTruth {
  std::vector<real> values;
  std::vector<uint8_t> mask;
};

struct TabularDataset {
  std::vector<Column> columns;
  int64_t n_rows = 0;
  std::vector<real> values;   // row-major n x m; discrete cells hold category index
  std::vector<uint8_t> mask;  // 1 = observed
  std::optional<GroundTruth> ground_truth;

  int64_t n_cols() const { return static_cast<int64_t>(columns.size()); }
  size_t idx(int64_t r, int64_t c) const {
    return static_cast<size_t>(r * n_cols() + c);
  }
  real value_at(int64_t r, int64_t c) const { return values[idx(r, c)]; }
  real& value_at(int64_t r, int64_t c) { return values[idx(r, c)]; }
  bool observed(int64_t r, int64_t c) const { return mask[idx(r, c)] != 0; }
  int64_t observed_count() const;

  void validate() const;
};

// Schema sidecar: {"columns": [{"name", "kind", "categories"?}, ...]}.
std::vector<Column> load_schema(const std::string& path);
void save_schema(const std::vector<Column>& schema, const std::string& path);

TabularDataset load_csv(const std::string& csv_path,
                        const std::vector<Column>& schema);
TabularDataset load_csv(const std::string& csv_path,
                        const std::string& schema_path);

// Writes header + rows; masked cells become empty fields, discrete cells
// their category string.
void save_csv(const TabularDataset& ds, const std::string& path);

void save_mask_csv(const TabularDataset& ds, const std::string& path);

// Hides `new_mask`'s zero cells: records ground truth (first injection
// only), intersects masks, and poisons hidden values with NaN so nothing
// downstream can read them by accident.
void apply_mask(TabularDataset& ds, const std::vector<uint8_t>& new_mask);

}  // namespace igrm::data
