#pragma once

#include <string>
#include <utility>

#include "igrm/data/dataset.hpp"
#include "igrm/graph/fpgrowth.hpp"

namespace igrm::graph {

// Initial friend-network adjacency: undirected, loop-free, deduplicated
// edges stored as (i < j) pairs in sorted order.
struct FriendInit {
  std::vector<std::pair<int32_t, int32_t>> edges;
  int64_t shortfall = 0;           // requested minus produced (init_cos)
  bool used_random_fallback = false;  // init_rule with no usable rules
};

// Exactly n distinct undirected edges drawn uniformly without replacement;
// when n(n-1)/2 <= n (n <= 3) every pair is connected instead.
FriendInit init_random(int64_t n, uint64_t seed);

// Top-n pairs by masked cosine similarity, skipping pairs whose similarity
// is undefined; ties broken by (i, j) lexical order.
FriendInit init_cos(const data::TabularDataset& ds);

// Association-rule pairing: continuous columns are binned (Davies-Bouldin
// k-means), rules are mined over observed cells, and each rule's matching
// samples are shuffled and paired without replacement until exhausted.
// Falls back to init_random when mining yields nothing usable.
FriendInit init_rule(const data::TabularDataset& ds, real min_support,
                     real min_confidence, uint64_t seed);

void save_adjacency_csv(const FriendInit& adj, const std::string& path);

}  // namespace igrm::graph
