#pragma once

#include <optional>

#include "igrm/data/dataset.hpp"

namespace igrm::graph {

// Cosine similarity over the coordinates observed in BOTH rows. Empty
// overlap or a zero-length restricted vector yields nullopt — deliberately
// not 0, which would claim orthogonality.
std::optional<real> masked_cosine(const data::TabularDataset& ds, int64_t i,
                                  int64_t j);

}  // namespace igrm::graph
