#include "igrm/graph/bipartite.hpp"

namespace igrm::graph {

BipartiteGraph build_bipartite(const data::TabularDataset& ds) {
  BipartiteGraph g;
  g.n_samples = ds.n_rows;
  g.n_features = ds.n_cols();

  for (const auto& col : ds.columns)
    if (col.kind == data::ColumnKind::discrete)
      g.d_e = std::max<int64_t>(g.d_e,
                                static_cast<int64_t>(col.categories.size()));

  for (int64_t r = 0; r < ds.n_rows; ++r) {
    for (int64_t c = 0; c < ds.n_cols(); ++c) {
      if (!ds.observed(r, c)) continue;
      g.edge_sample.push_back(r);
      g.edge_feature.push_back(c);
      size_t base = g.edge_attr.size();
      g.edge_attr.resize(base + static_cast<size_t>(g.d_e), real(0));
      real v = ds.value_at(r, c);
      if (ds.columns[static_cast<size_t>(c)].kind ==
          data::ColumnKind::discrete)
        g.edge_attr[base + static_cast<size_t>(v)] = real(1);
      else
        g.edge_attr[base] = v;
    }
  }
  return g;
}

}  // namespace igrm::graph
