// Copyright 2026 The dluce Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Enumeration of candidate winning sets and the expanded (one row per
// candidate outcome) design representation of a dataset.

#ifndef DLUCE_OUTCOME_SPACE_HPP_
#define DLUCE_OUTCOME_SPACE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "dluce/types.hpp"

namespace dluce {

// Every non-empty subset of `comparison` with at most
// min(|comparison|, max_tie_order) members. Subsets are ordered by size, then
// lexicographically by position in `comparison` (which is sorted by item
// index, i.e. universe order). Throws ModelError if max_tie_order < 1.
std::vector<ItemSet> enumerate_outcomes(const ItemSet& comparison,
                                        int max_tie_order);

// sum_{t=1}^{min(r, max_tie_order)} C(r, t).
std::int64_t outcome_count(int comparison_size, int max_tie_order);

// One row of the expanded table.
struct OutcomeRow {
  int contest_index = 0;  // 1-based, as shown in row labels
  ItemSet candidate;
  std::vector<double> item_shares;  // one per universe item; 1/t or 0
  std::vector<int> tie_indicators;  // entry k is order k + 2
  bool observed = false;

  int order() const { return static_cast<int>(candidate.size()); }
};

// Expands every contest into its candidate outcomes. Throws ModelError if a
// contest's observed outcome has more than `max_tie_order` members.
std::vector<OutcomeRow> expand_dataset(const Dataset& data, int max_tie_order);

// "<contest>: <members joined by '='>", e.g. "4: A=B=C".
std::string row_label(const OutcomeRow& row,
                      const std::vector<std::string>& items);

// Contests grouped by identical comparison set. Likelihood quantities depend
// on the data only through the per-outcome counts within each group, so the
// model code works on this form. Blocks are ordered by first appearance of
// their comparison set in the dataset.
struct ComparisonBlock {
  ItemSet comparison;
  std::vector<ItemSet> outcomes;  // enumerate_outcomes order
  std::vector<double> counts;     // observed count per outcome
  int contests = 0;
};

struct CompiledDesign {
  int num_items = 0;
  int max_tie_order = 1;
  int num_contests = 0;
  std::vector<ComparisonBlock> blocks;
};

// Validates `data` and groups it. Throws ModelError if an observed outcome
// exceeds `max_tie_order`.
CompiledDesign compile_design(const Dataset& data, int max_tie_order);

}  // namespace dluce

#endif  // DLUCE_OUTCOME_SPACE_HPP_
