#pragma once

#include "igrm/data/dataset.hpp"
#include "igrm/graph/friend_init.hpp"
#include "igrm/model/layers.hpp"

namespace igrm::model {

enum class Mode { igrm, grape, no_gae, once_gae };
Mode mode_from_string(const std::string& s);
std::string to_string(Mode m);

struct TrainConfig {
  int64_t epochs = 20000;
  real lr = 1e-3;
  int64_t reconstruct_every = 100;
  real tau = 0.5;
  Mode mode = Mode::igrm;
  int64_t edge_budget = 0;  // 0 = one edge per sample
  int64_t hidden = 64;
  int64_t n_layers = 3;
  uint64_t seed = 0;
  // Optional adjacency-reconstruction term against the initial friend
  // network, added to the imputation loss at reconstruction epochs.
  bool gae_aux_loss = false;
  real gae_aux_weight = 1.0;
  std::vector<int64_t> snapshot_epochs;  // 1-based epochs to snapshot p̂
};

struct TraceRow {
  int64_t epoch = 0;
  real loss = 0;
  real train_mae = 0;
  real test_mae = 0;
};

struct Snapshot {
  int64_t epoch = 0;
  int64_t rows = 0, cols = 0;
  std::vector<real> embeddings;  // p̂ at that epoch (p in grape mode)
};

struct TrainResult {
  std::vector<real> imputed;  // completed table in scaled space
  std::vector<TraceRow> trace;
  std::vector<Snapshot> snapshots;
  int64_t reconstructions = 0;
  std::vector<std::pair<int32_t, int32_t>> friend_edges;  // final hard set
  ModelParams params;
};

// Full-batch training on a scaled, masked dataset. Supervision is the
// observed cells; the trace's test MAE tracks the hidden cells where
// ground truth exists. Deterministic given (dataset, friend_init, config).
TrainResult train(const data::TabularDataset& ds,
                  const graph::FriendInit& finit, const TrainConfig& cfg);

}  // namespace igrm::model
