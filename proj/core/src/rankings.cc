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

#include "dluce/rankings.hpp"

#include <algorithm>
#include <iterator>
#include <set>

#include "dluce/model.hpp"

namespace dluce {

std::vector<Contest> decompose(const TiedRanking& ranking) {
  if (ranking.groups.empty()) throw ModelError("ranking has no groups");
  std::set<ItemIndex> seen;
  ItemSet remaining;
  for (const ItemSet& group : ranking.groups) {
    if (group.empty()) throw ModelError("ranking has an empty group");
    for (ItemIndex i : group) {
      if (!seen.insert(i).second) {
        throw ModelError("item " + std::to_string(i) +
                         " appears more than once in a ranking");
      }
    }
  }
  for (ItemIndex i : ranking.unranked) {
    if (!seen.insert(i).second) {
      throw ModelError("item " + std::to_string(i) +
                       " is both ranked and unranked");
    }
  }
  remaining.assign(seen.begin(), seen.end());

  std::vector<Contest> stages;
  for (const ItemSet& group : ranking.groups) {
    ItemSet winners = group;
    std::sort(winners.begin(), winners.end());
    if (remaining.size() == 1) break;  // a lone remaining item is forced
    stages.push_back(Contest{remaining, winners});
    ItemSet rest;
    std::set_difference(remaining.begin(), remaining.end(), winners.begin(),
                        winners.end(), std::back_inserter(rest));
    remaining = std::move(rest);
  }
  return stages;
}

Dataset rankings_to_dataset(const std::vector<std::string>& items,
                            const std::vector<TiedRanking>& rankings) {
  Dataset data;
  data.items = items;
  for (const TiedRanking& ranking : rankings) {
    for (Contest& stage : decompose(ranking)) {
      data.contests.push_back(std::move(stage));
    }
  }
  data.validate();
  return data;
}

double ranking_log_likelihood(const std::vector<std::string>& items,
                              const std::vector<TiedRanking>& rankings,
                              const ModelParams& params) {
  return log_likelihood(rankings_to_dataset(items, rankings), params);
}

}  // namespace dluce
