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

// Rankings with ties, decomposed into a chain of Davidson-Luce choices
// (Plackett-Luce with tied winners at any stage).

#ifndef DLUCE_RANKINGS_HPP_
#define DLUCE_RANKINGS_HPP_

#include <string>
#include <vector>

#include "dluce/types.hpp"

namespace dluce {

// groups[0] is preferred to groups[1], and so on. `unranked` items were
// available at every stage but never chosen (a partial, top-k ranking).
struct TiedRanking {
  std::vector<ItemSet> groups;
  ItemSet unranked;
};

// Stage k compares every item not placed before it and chooses groups[k].
// A stage with a single remaining item has probability 1 and is dropped.
// Throws ModelError for empty or overlapping groups.
std::vector<Contest> decompose(const TiedRanking& ranking);

// Concatenates the decompositions of `rankings` over the shared universe.
Dataset rankings_to_dataset(const std::vector<std::string>& items,
                            const std::vector<TiedRanking>& rankings);

// log_likelihood of rankings_to_dataset(items, rankings). A single gamma_t is
// shared by all stages regardless of how many items remain.
double ranking_log_likelihood(const std::vector<std::string>& items,
                              const std::vector<TiedRanking>& rankings,
                              const ModelParams& params);

}  // namespace dluce

#endif  // DLUCE_RANKINGS_HPP_
