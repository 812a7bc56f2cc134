#include "igrm/graph/friend_init.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "igrm/data/discretize.hpp"
#include "igrm/graph/similarity.hpp"
#include "igrm/num/rng.hpp"

namespace igrm::graph {

using data::TabularDataset;
using num::Rng;

namespace {

std::pair<int32_t, int32_t> ordered(int64_t a, int64_t b) {
  auto i = static_cast<int32_t>(std::min(a, b));
  auto j = static_cast<int32_t>(std::max(a, b));
  return {i, j};
}

FriendInit from_set(std::set<std::pair<int32_t, int32_t>> s) {
  FriendInit out;
  out.edges.assign(s.begin(), s.end());
  return out;
}

}  // namespace

FriendInit init_random(int64_t n, uint64_t seed) {
  require(n >= 2, "init_random: need at least 2 samples, got ", n);
  const int64_t possible = n * (n - 1) / 2;
  std::set<std::pair<int32_t, int32_t>> chosen;
  if (possible <= n) {
    for (int64_t i = 0; i < n; ++i)
      for (int64_t j = i + 1; j < n; ++j) chosen.insert(ordered(i, j));
    return from_set(std::move(chosen));
  }
  Rng rng(seed);
  while (static_cast<int64_t>(chosen.size()) < n) {
    int64_t i = rng.uniform_int(n);
    int64_t j = rng.uniform_int(n);
    if (i == j) continue;
    chosen.insert(ordered(i, j));
  }
  return from_set(std::move(chosen));
}

FriendInit init_cos(const TabularDataset& ds) {
  const int64_t n = ds.n_rows;
  require(n >= 2, "init_cos: need at least 2 samples, got ", n);
  struct Scored {
    real sim;
    int32_t i, j;
  };
  std::vector<Scored> scored;
  for (int64_t i = 0; i < n; ++i)
    for (int64_t j = i + 1; j < n; ++j)
      if (auto sim = masked_cosine(ds, i, j))
        scored.push_back(
            {*sim, static_cast<int32_t>(i), static_cast<int32_t>(j)});
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.sim != b.sim) return a.sim > b.sim;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  FriendInit out;
  const auto budget = static_cast<size_t>(n);
  for (size_t k = 0; k < scored.size() && k < budget; ++k)
    out.edges.emplace_back(scored[k].i, scored[k].j);
  if (out.edges.size() < budget)
    out.shortfall = static_cast<int64_t>(budget - out.edges.size());
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

FriendInit init_rule(const TabularDataset& ds, real min_support,
                     real min_confidence, uint64_t seed) {
  const int64_t n = ds.n_rows;
  require(n >= 2, "init_rule: need at least 2 samples, got ", n);

  // Items are (column, bin-or-category) pairs over observed cells.
  std::vector<std::vector<int32_t>> transactions(static_cast<size_t>(n));
  int32_t next_item = 0;
  for (int64_t c = 0; c < ds.n_cols(); ++c) {
    const auto& col = ds.columns[static_cast<size_t>(c)];
    std::vector<int64_t> rows;
    std::vector<int64_t> bins;
    if (col.kind == data::ColumnKind::discrete) {
      for (int64_t r = 0; r < n; ++r) {
        if (!ds.observed(r, c)) continue;
        rows.push_back(r);
        bins.push_back(static_cast<int64_t>(ds.value_at(r, c)));
      }
    } else {
      std::vector<real> observed;
      for (int64_t r = 0; r < n; ++r) {
        if (!ds.observed(r, c)) continue;
        rows.push_back(r);
        observed.push_back(ds.value_at(r, c));
      }
      if (observed.size() < 2) continue;  // nothing to bin
      bins = data::discretize_db(observed).bins;
    }
    int64_t max_bin = -1;
    for (int64_t b : bins) max_bin = std::max(max_bin, b);
    for (size_t k = 0; k < rows.size(); ++k)
      transactions[static_cast<size_t>(rows[k])].push_back(
          next_item + static_cast<int32_t>(bins[k]));
    next_item += static_cast<int32_t>(max_bin + 1);
  }

  auto itemsets = fp_growth(transactions, min_support);
  auto rules = derive_rules(itemsets, min_confidence);

  std::set<std::pair<int32_t, int32_t>> chosen;
  Rng rng(seed);
  for (const auto& rule : rules) {
    std::vector<int32_t> want = rule.antecedent;
    want.push_back(rule.consequent);
    std::sort(want.begin(), want.end());
    std::vector<int32_t> candidates;
    for (int64_t r = 0; r < n; ++r) {
      const auto& t = transactions[static_cast<size_t>(r)];
      if (std::includes(t.begin(), t.end(), want.begin(), want.end()))
        candidates.push_back(static_cast<int32_t>(r));
    }
    rng.shuffle(candidates);
    for (size_t k = 0; k + 1 < candidates.size(); k += 2)
      chosen.insert(ordered(candidates[k], candidates[k + 1]));
  }

  if (chosen.empty()) {
    FriendInit out = init_random(n, seed);
    out.used_random_fallback = true;
    return out;
  }
  return from_set(std::move(chosen));
}

void save_adjacency_csv(const FriendInit& adj, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io, "adjacency: cannot write ", path);
  out << "i,j\n";
  for (const auto& [i, j] : adj.edges) out << i << "," << j << "\n";
}

}  // namespace igrm::graph
