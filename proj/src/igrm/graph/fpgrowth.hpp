#pragma once

#include <cstdint>
#include <vector>

#include "igrm/common.hpp"

namespace igrm::graph {

struct Itemset {
  std::vector<int32_t> items;  // sorted ascending
  int64_t count = 0;
};

struct Rule {
  std::vector<int32_t> antecedent;  // sorted ascending, disjoint from consequent
  int32_t consequent = 0;
  int64_t count = 0;  // transactions containing antecedent + consequent
  real confidence = 0;
};

// FP-tree frequent-itemset mining. Returns exactly the itemsets whose
// support count >= ceil(min_support * |transactions|), with exact counts.
std::vector<Itemset> fp_growth(
    const std::vector<std::vector<int32_t>>& transactions, real min_support);

// All rules antecedent => single-item consequent with
// confidence = count(A ∪ {b}) / count(A) >= min_confidence, derived from a
// complete frequent-itemset list (subset counts must be present).
std::vector<Rule> derive_rules(const std::vector<Itemset>& itemsets,
                               real min_confidence);

}  // namespace igrm::graph
