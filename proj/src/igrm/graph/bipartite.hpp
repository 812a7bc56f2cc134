#pragma once

#include "igrm/data/dataset.hpp"

namespace igrm::graph {

// Undirected bipartite view of a scaled dataset: one sample node per row,
// one feature node per column, one edge per observed cell. Sample nodes
// carry all-ones features (width m); feature nodes carry one-hot rows.
struct BipartiteGraph {
  int64_t n_samples = 0;
  int64_t n_features = 0;
  int64_t d_e = 1;  // uniform edge-attribute width

  std::vector<int64_t> edge_sample;   // one entry per observed cell
  std::vector<int64_t> edge_feature;
  std::vector<real> edge_attr;        // n_edges x d_e, row-major

  int64_t n_edges() const { return static_cast<int64_t>(edge_sample.size()); }
};

BipartiteGraph build_bipartite(const data::TabularDataset& scaled);

}  // namespace igrm::graph
