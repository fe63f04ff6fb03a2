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

#include "dluce/types.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace dluce {

std::optional<ItemIndex> Dataset::find(std::string_view label) const {
  for (int i = 0; i < num_items(); ++i) {
    if (items[i] == label) return i;
  }
  return std::nullopt;
}

ItemIndex Dataset::index_of(std::string_view label) const {
  auto index = find(label);
  if (!index) throw ModelError("unknown item '" + std::string(label) + "'");
  return *index;
}

int Dataset::max_observed_tie_order() const {
  int max_order = 0;
  for (const Contest& c : contests) max_order = std::max(max_order, c.tie_order());
  return max_order;
}

void Dataset::validate() const {
  std::set<std::string_view> seen;
  for (const std::string& label : items) {
    if (!seen.insert(label).second) {
      throw ModelError("duplicate item label '" + label + "'");
    }
  }
  for (int k = 0; k < num_contests(); ++k) {
    const Contest& c = contests[k];
    const std::string where = "contest " + std::to_string(k + 1) + ": ";
    if (c.size() < 2) {
      throw ModelError(where + "comparison set needs at least 2 items");
    }
    if (c.size() > kMaxComparisonSize) {
      throw ModelError(where + "comparison set larger than " +
                       std::to_string(kMaxComparisonSize) + " items");
    }
    for (int i = 0; i < c.size(); ++i) {
      if (c.comparison[i] < 0 || c.comparison[i] >= num_items()) {
        throw ModelError(where + "unknown item index " +
                         std::to_string(c.comparison[i]));
      }
      if (i > 0 && c.comparison[i - 1] >= c.comparison[i]) {
        throw ModelError(where + "comparison set not sorted and unique");
      }
    }
    if (c.winners.empty()) throw ModelError(where + "empty winning set");
    for (int i = 0; i < c.tie_order(); ++i) {
      if (i > 0 && c.winners[i - 1] >= c.winners[i]) {
        throw ModelError(where + "winning set not sorted and unique");
      }
    }
    if (!std::includes(c.comparison.begin(), c.comparison.end(),
                       c.winners.begin(), c.winners.end())) {
      throw ModelError(where + "winning set not within comparison set");
    }
  }
}

Contest make_contest(ItemSet comparison, ItemSet winners) {
  std::sort(comparison.begin(), comparison.end());
  std::sort(winners.begin(), winners.end());
  auto dup = [](const ItemSet& s) {
    return std::adjacent_find(s.begin(), s.end()) != s.end();
  };
  if (dup(comparison) || dup(winners)) {
    throw ModelError("repeated item within a contest");
  }
  if (comparison.size() < 2) {
    throw ModelError("comparison set needs at least 2 items");
  }
  if (winners.empty()) throw ModelError("empty winning set");
  if (!std::includes(comparison.begin(), comparison.end(), winners.begin(),
                     winners.end())) {
    throw ModelError("winning set not within comparison set");
  }
  return Contest{std::move(comparison), std::move(winners)};
}

bool ModelParams::admits(int order) const {
  if (order == 1) return true;
  if (order < 1 || order > max_tie_order()) return false;
  return log_tie_prevalence[order - 2].has_value();
}

double ModelParams::log_delta(int order) const {
  if (order < 1 || order > max_tie_order()) {
    throw ModelError("tie order " + std::to_string(order) +
                     " outside 1.." + std::to_string(max_tie_order()));
  }
  if (order == 1) return 0.0;
  const auto& gamma = log_tie_prevalence[order - 2];
  return gamma ? *gamma : -std::numeric_limits<double>::infinity();
}

void ModelParams::normalize() {
  if (reference_item < 0 || reference_item >= num_items()) {
    throw ModelError("reference item out of range");
  }
  const double shift = log_strength[reference_item];
  for (double& lambda : log_strength) lambda -= shift;
  log_strength[reference_item] = 0.0;
}

ModelParams ModelParams::neutral(int num_items, int max_tie_order) {
  if (num_items < 1) throw ModelError("need at least one item");
  if (max_tie_order < 1) throw ModelError("max tie order must be >= 1");
  ModelParams params;
  params.log_strength.assign(num_items, 0.0);
  params.log_tie_prevalence.assign(max_tie_order - 1, 0.0);
  params.reference_item = num_items - 1;
  return params;
}

std::string outcome_label(const ItemSet& members,
                          const std::vector<std::string>& items) {
  std::string label;
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (k > 0) label += '=';
    label += items.at(members[k]);
  }
  return label;
}

}  // namespace dluce
