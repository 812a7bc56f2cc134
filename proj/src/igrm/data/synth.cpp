#include "igrm/data/synth.hpp"

#include <cmath>

#include "igrm/num/rng.hpp"

namespace igrm::data {

using num::Rng;

TabularDataset make_synthetic(const SynthSpec& spec) {
  require(spec.n_rows > 0, "synth: need rows, got ", spec.n_rows);
  require(spec.n_continuous + spec.n_discrete > 0, "synth: need columns");
  require(spec.n_clusters >= 1 && spec.n_clusters <= spec.n_rows,
          "synth: cluster count ", spec.n_clusters, " outside 1..",
          spec.n_rows);

  const int64_t n = spec.n_rows;
  const int64_t mc = spec.n_continuous;
  const int64_t md = spec.n_discrete;
  const int64_t m = mc + md;
  const int64_t K = spec.n_clusters;
  Rng rng(spec.seed);

  // Balanced cluster assignment, shuffled so row order carries no signal.
  std::vector<int64_t> assign(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) assign[static_cast<size_t>(i)] = i % K;
  rng.shuffle(assign);

  // Cluster centers for continuous columns.
  std::vector<real> centers(static_cast<size_t>(K * mc));
  for (auto& c : centers)
    c = real(0.5) + spec.center_spread * (real(2) * rng.uniform() - real(1));

  // Per-cluster category-1 frequencies for binary columns.
  std::vector<real> cat_p(static_cast<size_t>(K * md));
  for (auto& p : cat_p) p = rng.uniform(0.15, 0.85);

  // Raw-unit affine disguise per continuous column (min-max undoes it).
  std::vector<real> col_scale(static_cast<size_t>(mc));
  std::vector<real> col_offset(static_cast<size_t>(mc));
  for (int64_t j = 0; j < mc; ++j) {
    col_scale[static_cast<size_t>(j)] =
        std::pow(real(10), rng.uniform(0.0, 2.0));
    col_offset[static_cast<size_t>(j)] = rng.uniform(-50.0, 50.0);
  }

  TabularDataset ds;
  ds.n_rows = n;
  for (int64_t j = 0; j < mc; ++j)
    ds.columns.push_back({format("x", j + 1), ColumnKind::continuous, {}});
  for (int64_t j = 0; j < md; ++j)
    ds.columns.push_back(
        {format("c", j + 1), ColumnKind::discrete, {"no", "yes"}});
  ds.values.resize(static_cast<size_t>(n * m));
  ds.mask.assign(static_cast<size_t>(n * m), 1);

  for (int64_t i = 0; i < n; ++i) {
    int64_t z = assign[static_cast<size_t>(i)];
    for (int64_t j = 0; j < mc; ++j) {
      real v = centers[static_cast<size_t>(z * mc + j)] +
               spec.noise_sd * rng.normal();
      ds.values[ds.idx(i, j)] =
          col_offset[static_cast<size_t>(j)] +
          col_scale[static_cast<size_t>(j)] * v;
    }
    for (int64_t j = 0; j < md; ++j) {
      real p = cat_p[static_cast<size_t>(z * md + j)];
      ds.values[ds.idx(i, mc + j)] = rng.uniform() < p ? real(1) : real(0);
    }
  }
  ds.validate();
  return ds;
}

SynthSpec benchmark_spec(const std::string& name) {
  SynthSpec spec;
  if (name == "concrete") {
    spec.n_rows = 1030;
    spec.n_continuous = 8;
    spec.seed = 0xC0C7E7E;
    spec.center_spread = 0.56;
    spec.noise_sd = 0.085;
  } else if (name == "housing") {
    spec.n_rows = 506;
    spec.n_continuous = 12;
    spec.n_discrete = 1;
    spec.seed = 0x80551C6;
    spec.center_spread = 0.38;
    spec.noise_sd = 0.085;
  } else if (name == "yacht") {
    spec.n_rows = 308;
    spec.n_continuous = 6;
    spec.seed = 0x9AC87;
    spec.center_spread = 0.38;
    spec.noise_sd = 0.085;
  } else {
    fail(ErrorCode::invalid_argument, "synth: unknown benchmark '", name,
         "' (expected concrete, housing or yacht)");
  }
  return spec;
}

TabularDataset make_benchmark(const std::string& name) {
  return make_synthetic(benchmark_spec(name));
}

}  // namespace igrm::data
