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

#include "dluce/outcome_space.hpp"

#include <algorithm>
#include <map>

namespace dluce {

std::vector<ItemSet> enumerate_outcomes(const ItemSet& comparison,
                                        int max_tie_order) {
  if (max_tie_order < 1) throw ModelError("max tie order must be >= 1");
  const int r = static_cast<int>(comparison.size());
  if (r < 2) throw ModelError("a comparison set needs at least 2 items");
  if (r > kMaxComparisonSize) {
    throw ModelError("comparison set larger than " + std::to_string(kMaxComparisonSize));
  }
  const int top = std::min(r, max_tie_order);
  std::vector<ItemSet> out;
  out.reserve(static_cast<std::size_t>(outcome_count(r, max_tie_order)));

  std::vector<int> pos;
  for (int t = 1; t <= top; ++t) {
    // Lexicographic combinations of positions, as R's combn().
    pos.resize(t);
    for (int k = 0; k < t; ++k) pos[k] = k;
    while (true) {
      ItemSet members(t);
      for (int k = 0; k < t; ++k) members[k] = comparison[pos[k]];
      out.push_back(std::move(members));
      int k = t - 1;
      while (k >= 0 && pos[k] == r - t + k) --k;
      if (k < 0) break;
      ++pos[k];
      for (int j = k + 1; j < t; ++j) pos[j] = pos[j - 1] + 1;
    }
  }
  return out;
}

std::int64_t outcome_count(int comparison_size, int max_tie_order) {
  const int top = std::min(comparison_size, max_tie_order);
  std::int64_t total = 0;
  std::int64_t binom = 1;  // C(r, t), built incrementally
  for (int t = 1; t <= top; ++t) {
    binom = binom * (comparison_size - t + 1) / t;
    total += binom;
  }
  return total;
}

std::vector<OutcomeRow> expand_dataset(const Dataset& data,
                                       int max_tie_order) {
  data.validate();
  std::vector<OutcomeRow> rows;
  for (int k = 0; k < data.num_contests(); ++k) {
    const Contest& contest = data.contests[k];
    if (contest.tie_order() > max_tie_order) {
      throw ModelError("contest " + std::to_string(k + 1) +
                       " has a tie of order " +
                       std::to_string(contest.tie_order()) +
                       ", above max tie order " +
                       std::to_string(max_tie_order));
    }
    for (ItemSet& candidate :
         enumerate_outcomes(contest.comparison, max_tie_order)) {
      OutcomeRow row;
      row.contest_index = k + 1;
      const int t = static_cast<int>(candidate.size());
      row.item_shares.assign(data.num_items(), 0.0);
      for (ItemIndex i : candidate) row.item_shares[i] = 1.0 / t;
      row.tie_indicators.assign(std::max(0, max_tie_order - 1), 0);
      if (t >= 2) row.tie_indicators[t - 2] = 1;
      row.observed = candidate == contest.winners;
      row.candidate = std::move(candidate);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string row_label(const OutcomeRow& row,
                      const std::vector<std::string>& items) {
  return std::to_string(row.contest_index) + ": " +
         outcome_label(row.candidate, items);
}

CompiledDesign compile_design(const Dataset& data, int max_tie_order) {
  data.validate();
  if (max_tie_order < 1) throw ModelError("max tie order must be >= 1");
  CompiledDesign design;
  design.num_items = data.num_items();
  design.max_tie_order = max_tie_order;
  design.num_contests = data.num_contests();

  std::map<ItemSet, std::size_t> block_of;
  for (int k = 0; k < data.num_contests(); ++k) {
    const Contest& contest = data.contests[k];
    if (contest.tie_order() > max_tie_order) {
      throw ModelError("contest " + std::to_string(k + 1) +
                       " has a tie of order " +
                       std::to_string(contest.tie_order()) +
                       ", above max tie order " +
                       std::to_string(max_tie_order));
    }
    auto [it, inserted] =
        block_of.try_emplace(contest.comparison, design.blocks.size());
    if (inserted) {
      ComparisonBlock block;
      block.comparison = contest.comparison;
      block.outcomes = enumerate_outcomes(contest.comparison, max_tie_order);
      block.counts.assign(block.outcomes.size(), 0.0);
      design.blocks.push_back(std::move(block));
    }
    ComparisonBlock& block = design.blocks[it->second];
    auto hit = std::find(block.outcomes.begin(), block.outcomes.end(),
                         contest.winners);
    block.counts[hit - block.outcomes.begin()] += 1.0;
    ++block.contests;
  }
  return design;
}

}  // namespace dluce
