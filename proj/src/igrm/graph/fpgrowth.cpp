#include "igrm/graph/fpgrowth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <unordered_map>

namespace igrm::graph {

namespace {

struct FpNode {
  int32_t item = -1;
  int64_t count = 0;
  FpNode* parent = nullptr;
  std::unordered_map<int32_t, std::unique_ptr<FpNode>> children;
  FpNode* next = nullptr;  // same-item chain
};

struct FpTree {
  FpNode root;
  // (item, chain head), kept in the insertion frequency order used to sort
  // transaction items: descending count, ascending item id.
  std::vector<std::pair<int32_t, FpNode*>> header;
  std::unordered_map<int32_t, size_t> header_pos;
  std::unordered_map<int32_t, FpNode*> chain_tail;

  void insert(const std::vector<int32_t>& items, int64_t weight) {
    FpNode* cur = &root;
    for (int32_t item : items) {
      auto it = cur->children.find(item);
      if (it == cur->children.end()) {
        auto node = std::make_unique<FpNode>();
        node->item = item;
        node->parent = cur;
        FpNode* raw = node.get();
        cur->children.emplace(item, std::move(node));
        auto tail = chain_tail.find(item);
        if (tail == chain_tail.end()) {
          header.emplace_back(item, raw);
          header_pos[item] = header.size() - 1;
        } else {
          tail->second->next = raw;
        }
        chain_tail[item] = raw;
        cur = raw;
      } else {
        cur = it->second.get();
      }
      cur->count += weight;
    }
  }
};

// Weighted transactions (weights arise in conditional pattern bases).
using WeightedTx = std::pair<std::vector<int32_t>, int64_t>;

void mine(const std::vector<WeightedTx>& transactions, int64_t min_count,
          std::vector<int32_t>& suffix, std::vector<Itemset>& out) {
  // Count items, keep the frequent ones.
  std::unordered_map<int32_t, int64_t> counts;
  for (const auto& [items, w] : transactions)
    for (int32_t item : items) counts[item] += w;

  std::vector<std::pair<int32_t, int64_t>> frequent;
  for (const auto& [item, c] : counts)
    if (c >= min_count) frequent.emplace_back(item, c);
  if (frequent.empty()) return;
  std::sort(frequent.begin(), frequent.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::unordered_map<int32_t, size_t> rank;
  for (size_t i = 0; i < frequent.size(); ++i) rank[frequent[i].first] = i;

  FpTree tree;
  std::vector<int32_t> filtered;
  for (const auto& [items, w] : transactions) {
    filtered.clear();
    for (int32_t item : items)
      if (rank.count(item)) filtered.push_back(item);
    std::sort(filtered.begin(), filtered.end(),
              [&](int32_t a, int32_t b) { return rank[a] < rank[b]; });
    if (!filtered.empty()) tree.insert(filtered, w);
  }

  // Walk items least-frequent first so conditional bases stay small.
  for (auto it = frequent.rbegin(); it != frequent.rend(); ++it) {
    int32_t item = it->first;
    int64_t item_count = it->second;

    suffix.push_back(item);
    Itemset is;
    is.items = suffix;
    std::sort(is.items.begin(), is.items.end());
    is.count = item_count;
    out.push_back(std::move(is));

    // Conditional pattern base: root paths above each chain node.
    std::vector<WeightedTx> base;
    for (FpNode* node = tree.header_pos.count(item)
                            ? tree.header[tree.header_pos[item]].second
                            : nullptr;
         node != nullptr; node = node->next) {
      std::vector<int32_t> path;
      for (FpNode* p = node->parent; p && p->item != -1; p = p->parent)
        path.push_back(p->item);
      if (!path.empty()) {
        std::reverse(path.begin(), path.end());
        base.emplace_back(std::move(path), node->count);
      }
    }
    if (!base.empty()) mine(base, min_count, suffix, out);
    suffix.pop_back();
  }
}

}  // namespace

std::vector<Itemset> fp_growth(
    const std::vector<std::vector<int32_t>>& transactions, real min_support) {
  require(min_support > 0 && min_support <= 1,
          "fp_growth: min_support must lie in (0,1], got ", min_support);
  if (transactions.empty()) return {};
  const auto n = static_cast<real>(transactions.size());
  auto min_count = static_cast<int64_t>(
      std::ceil(min_support * n - real(1e-9)));
  min_count = std::max<int64_t>(min_count, 1);

  std::vector<WeightedTx> weighted;
  weighted.reserve(transactions.size());
  for (const auto& t : transactions) {
    std::vector<int32_t> items = t;
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    weighted.emplace_back(std::move(items), 1);
  }

  std::vector<Itemset> out;
  std::vector<int32_t> suffix;
  mine(weighted, min_count, suffix, out);
  std::sort(out.begin(), out.end(), [](const Itemset& a, const Itemset& b) {
    if (a.items.size() != b.items.size())
      return a.items.size() < b.items.size();
    return a.items < b.items;
  });
  return out;
}

std::vector<Rule> derive_rules(const std::vector<Itemset>& itemsets,
                               real min_confidence) {
  std::map<std::vector<int32_t>, int64_t> counts;
  for (const auto& is : itemsets) counts[is.items] = is.count;

  std::vector<Rule> rules;
  for (const auto& is : itemsets) {
    if (is.items.size() < 2) continue;
    for (int32_t b : is.items) {
      std::vector<int32_t> antecedent;
      for (int32_t x : is.items)
        if (x != b) antecedent.push_back(x);
      auto it = counts.find(antecedent);
      require(it != counts.end(),
              "derive_rules: itemset list is missing a subset count; "
              "pass the full fp_growth output");
      real conf = static_cast<real>(is.count) / static_cast<real>(it->second);
      if (conf + real(1e-12) >= min_confidence)
        rules.push_back({std::move(antecedent), b, is.count, conf});
    }
  }
  return rules;
}

}  // namespace igrm::graph
