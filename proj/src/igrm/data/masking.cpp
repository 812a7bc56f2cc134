#include "igrm/data/masking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "igrm/num/rng.hpp"

namespace igrm::data {

using num::Rng;

Mechanism mechanism_from_string(const std::string& s) {
  if (s == "mcar") return Mechanism::mcar;
  if (s == "mar") return Mechanism::mar;
  if (s == "mnar") return Mechanism::mnar;
  fail(ErrorCode::invalid_argument, "mechanism: unknown '", s,
       "' (expected mcar, mar or mnar)");
}

std::string to_string(Mechanism m) {
  switch (m) {
    case Mechanism::mcar: return "mcar";
    case Mechanism::mar: return "mar";
    case Mechanism::mnar: return "mnar";
  }
  return "?";
}

namespace {

void check_ratio(real ratio) {
  require(ratio > 0 && ratio < 1, "mask: missing ratio must lie in (0,1), got ",
          ratio);
}

// Splits columns into (maskable, input) with |maskable| = round(ff * m).
std::pair<std::vector<int64_t>, std::vector<int64_t>> pick_maskable(
    int64_t m, real ff, Rng& rng) {
  require(ff > 0 && ff <= 1, "mask: feature fraction must lie in (0,1], got ",
          ff);
  int64_t k = std::llround(ff * static_cast<real>(m));
  require(k >= 1, "mask: feature fraction ", ff, " selects no column out of ",
          m);
  require(k < m, "mask: feature fraction ", ff, " leaves no fully observed ",
          "column out of ", m);
  std::vector<int64_t> cols(static_cast<size_t>(m));
  std::iota(cols.begin(), cols.end(), 0);
  rng.shuffle(cols);
  std::vector<int64_t> maskable(cols.begin(), cols.begin() + k);
  std::vector<int64_t> inputs(cols.begin() + k, cols.end());
  std::sort(maskable.begin(), maskable.end());
  std::sort(inputs.begin(), inputs.end());
  return {maskable, inputs};
}

// Standardized design matrix over the input columns (column-wise z-scores
// over observed cells; unobserved or zero-variance entries contribute 0).
std::vector<real> standardized_inputs(const TabularDataset& ds,
                                      const std::vector<int64_t>& inputs) {
  const int64_t n = ds.n_rows;
  std::vector<real> z(static_cast<size_t>(n * inputs.size()), real(0));
  for (size_t j = 0; j < inputs.size(); ++j) {
    int64_t c = inputs[j];
    real sum = 0, sq = 0;
    int64_t cnt = 0;
    for (int64_t r = 0; r < n; ++r) {
      if (!ds.observed(r, c)) continue;
      real v = ds.value_at(r, c);
      sum += v;
      sq += v * v;
      ++cnt;
    }
    if (cnt == 0) continue;
    real mean = sum / static_cast<real>(cnt);
    real var = std::max(real(0), sq / static_cast<real>(cnt) - mean * mean);
    real sd = std::sqrt(var);
    if (sd == real(0)) continue;
    for (int64_t r = 0; r < n; ++r)
      if (ds.observed(r, c))
        z[static_cast<size_t>(r) * inputs.size() + j] =
            (ds.value_at(r, c) - mean) / sd;
  }
  return z;
}

real sigmoid(real x) { return real(1) / (real(1) + std::exp(-x)); }

// Bias such that mean_r sigmoid(score_r + b) = ratio; monotone, so plain
// bisection suffices.
real calibrate_bias(const std::vector<real>& scores, real ratio) {
  auto mean_at = [&](real b) {
    real acc = 0;
    for (real s : scores) acc += sigmoid(s + b);
    return acc / static_cast<real>(scores.size());
  };
  real lo = -60, hi = 60;
  if (mean_at(lo) > ratio || mean_at(hi) < ratio)
    fail(ErrorCode::numeric, "mask: cannot calibrate logistic bias to ratio ",
         ratio);
  for (int it = 0; it < 200; ++it) {
    real mid = real(0.5) * (lo + hi);
    if (mean_at(mid) < ratio)
      lo = mid;
    else
      hi = mid;
  }
  return real(0.5) * (lo + hi);
}

std::vector<real> row_probabilities(const TabularDataset& ds,
                                    const std::vector<int64_t>& inputs,
                                    real ratio, Rng& rng,
                                    const std::vector<real>* weights_override) {
  const int64_t n = ds.n_rows;
  std::vector<real> z = standardized_inputs(ds, inputs);
  std::vector<real> w(inputs.size());
  for (auto& wj : w) wj = rng.normal();
  if (weights_override) {
    require(weights_override->size() == w.size(),
            "mask: weight override has ", weights_override->size(),
            " entries, need ", w.size());
    w = *weights_override;
  }
  std::vector<real> scores(static_cast<size_t>(n), real(0));
  for (int64_t r = 0; r < n; ++r) {
    real s = 0;
    for (size_t j = 0; j < w.size(); ++j)
      s += w[j] * z[static_cast<size_t>(r) * w.size() + j];
    scores[static_cast<size_t>(r)] = s;
  }
  real b = calibrate_bias(scores, ratio);
  std::vector<real> p(static_cast<size_t>(n));
  for (int64_t r = 0; r < n; ++r)
    p[static_cast<size_t>(r)] = sigmoid(scores[static_cast<size_t>(r)] + b);
  return p;
}

std::vector<uint8_t> mask_logistic(const TabularDataset& ds, real ratio,
                                   real ff, uint64_t seed, bool then_mcar,
                                   const std::vector<real>* weights_override) {
  check_ratio(ratio);
  const int64_t n = ds.n_rows, m = ds.n_cols();
  Rng rng(seed);
  auto [maskable, inputs] = pick_maskable(m, ff, rng);
  std::vector<real> p = row_probabilities(ds, inputs, ratio, rng,
                                          weights_override);
  std::vector<uint8_t> mask = ds.mask;
  for (int64_t r = 0; r < n; ++r)
    for (int64_t c : maskable)
      if (rng.uniform() < p[static_cast<size_t>(r)]) mask[ds.idx(r, c)] = 0;
  if (then_mcar) {
    for (int64_t r = 0; r < n; ++r)
      for (int64_t c : inputs)
        if (rng.uniform() < ratio) mask[ds.idx(r, c)] = 0;
  }
  return mask;
}

}  // namespace

std::vector<uint8_t> mask_mcar(const TabularDataset& ds, real ratio,
                               uint64_t seed) {
  check_ratio(ratio);
  Rng rng(seed);
  std::vector<uint8_t> mask = ds.mask;
  for (size_t i = 0; i < mask.size(); ++i)
    if (rng.uniform() < ratio) mask[i] = 0;
  return mask;
}

std::vector<uint8_t> mask_mar(const TabularDataset& ds, real ratio,
                              real feature_fraction, uint64_t seed) {
  return mask_logistic(ds, ratio, feature_fraction, seed, false, nullptr);
}

std::vector<uint8_t> mask_mnar(const TabularDataset& ds, real ratio,
                               real feature_fraction, uint64_t seed) {
  return mask_logistic(ds, ratio, feature_fraction, seed, true, nullptr);
}

std::vector<uint8_t> make_mask(const TabularDataset& ds, const MaskSpec& spec) {
  switch (spec.mechanism) {
    case Mechanism::mcar:
      return mask_mcar(ds, spec.missing_ratio, spec.seed);
    case Mechanism::mar:
      return mask_mar(ds, spec.missing_ratio, spec.feature_fraction,
                      spec.seed);
    case Mechanism::mnar:
      return mask_mnar(ds, spec.missing_ratio, spec.feature_fraction,
                       spec.seed);
  }
  fail(ErrorCode::internal, "mask: unhandled mechanism");
}

namespace testing {
std::vector<uint8_t> mask_mar_with_weights(const TabularDataset& ds,
                                           real ratio, real feature_fraction,
                                           uint64_t seed,
                                           const std::vector<real>& weights) {
  return mask_logistic(ds, ratio, feature_fraction, seed, false, &weights);
}
}  // namespace testing

}  // namespace igrm::data
