#pragma once

#include "igrm/data/dataset.hpp"

namespace igrm::data {

// Cluster-structured table generator. Rows are drawn around per-cluster
// centers with Gaussian noise; discrete columns get per-cluster category
// frequencies; columns are affinely rescaled to varied raw ranges (undone
// exactly by min-max scaling). Deterministic under seed.
struct SynthSpec {
  int64_t n_rows = 0;
  int64_t n_continuous = 0;
  int64_t n_discrete = 0;  // binary categorical columns
  int64_t n_clusters = 4;
  real center_spread = 0.32;  // half-range of cluster centers around 0.5
  real noise_sd = 0.085;      // within-cluster spread before column rescale
  uint64_t seed = 1;
};

TabularDataset make_synthetic(const SynthSpec& spec);

// Fixed desk-scale stand-ins for the three benchmark tables (complete
// data; masks are injected downstream). Shapes: concrete 1030x8 continuous,
// housing 506x13 with one binary column, yacht 308x6 continuous.
TabularDataset make_benchmark(const std::string& name);
SynthSpec benchmark_spec(const std::string& name);

}  // namespace igrm::data
