#pragma once

#include "igrm/data/dataset.hpp"

namespace igrm::data {

enum class Mechanism { mcar, mar, mnar };

struct MaskSpec {
  Mechanism mechanism = Mechanism::mcar;
  real missing_ratio = 0.3;
  real feature_fraction = 0.5;  // MAR/MNAR: share of columns eligible for masking
  uint64_t seed = 0;
};

Mechanism mechanism_from_string(const std::string& s);
std::string to_string(Mechanism m);

// Each generator returns a fresh observability mask (1 = observed) that is
// never more permissive than the dataset's current mask. Apply it with
// apply_mask() to actually hide cells.
std::vector<uint8_t> mask_mcar(const TabularDataset& ds, real ratio,
                               uint64_t seed);

// Logistic masking: a feature_fraction subset of columns is maskable; a
// single logistic model over the standardized non-maskable columns yields
// per-row missing probabilities, with its bias calibrated by bisection so
// the expected missing fraction over maskable cells equals ratio.
std::vector<uint8_t> mask_mar(const TabularDataset& ds, real ratio,
                              real feature_fraction, uint64_t seed);

// Like mask_mar for the maskable subset, but the non-maskable inputs are
// afterwards masked MCAR at the same ratio, so every column can lose cells.
std::vector<uint8_t> mask_mnar(const TabularDataset& ds, real ratio,
                               real feature_fraction, uint64_t seed);

std::vector<uint8_t> make_mask(const TabularDataset& ds, const MaskSpec& spec);

namespace testing {
// Seam for verifying the degenerate logistic case (fixed weights).
std::vector<uint8_t> mask_mar_with_weights(const TabularDataset& ds,
                                           real ratio, real feature_fraction,
                                           uint64_t seed,
                                           const std::vector<real>& weights);
}  // namespace testing

}  // namespace igrm::data
