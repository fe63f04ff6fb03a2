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

// Core data types shared by every dluce module: items, contests, datasets and
// model parameters for the Davidson-Luce choice model with ties.

#ifndef DLUCE_TYPES_HPP_
#define DLUCE_TYPES_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dluce {

// Dense index of an item within a Dataset's item universe.
using ItemIndex = int;

// Sorted, duplicate-free set of item indices. Used both for comparison sets
// and for winning sets (a winning set of size t > 1 is a t-way tie).
using ItemSet = std::vector<ItemIndex>;

// Largest comparison set admitted. Outcome spaces grow as 2^r.
inline constexpr int kMaxComparisonSize = 20;

// Thrown for malformed inputs: unknown items, invalid contests, parameter
// vectors of the wrong shape, tie orders outside the admitted range.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Contest {
  ItemSet comparison;
  ItemSet winners;

  int size() const { return static_cast<int>(comparison.size()); }
  int tie_order() const { return static_cast<int>(winners.size()); }
};

// An ordered collection of contests over a shared item universe. Contest
// order is significant: every reduction over contests runs in this order.
struct Dataset {
  std::vector<std::string> items;
  std::vector<Contest> contests;

  int num_items() const { return static_cast<int>(items.size()); }
  int num_contests() const { return static_cast<int>(contests.size()); }

  // Returns the index of `label`, or std::nullopt if it is not an item.
  std::optional<ItemIndex> find(std::string_view label) const;
  // As find(), but throws ModelError for unknown labels.
  ItemIndex index_of(std::string_view label) const;

  // Largest observed winning-set size (0 for an empty dataset).
  int max_observed_tie_order() const;

  // Throws ModelError describing the first violated invariant: duplicate
  // item labels, comparison sets that are unsorted, too small (< 2) or too
  // large, or winning sets that are empty or not contained in the
  // comparison set.
  void validate() const;
};

// Builds a contest from unsorted indices, sorting and checking it.
Contest make_contest(ItemSet comparison, ItemSet winners);

// Log-scale parameters of the Davidson-Luce model.
//
// log_strength[i] is lambda_i = log(alpha_i). log_tie_prevalence[t - 2] is
// gamma_t = log(delta_t) for tie order t in 2..max_tie_order(); an empty
// entry means the order is structurally excluded (delta_t = 0). Order 1 is
// implicit with delta_1 = 1.
struct ModelParams {
  std::vector<double> log_strength;
  std::vector<std::optional<double>> log_tie_prevalence;
  ItemIndex reference_item = 0;

  int num_items() const { return static_cast<int>(log_strength.size()); }
  int max_tie_order() const {
    return 1 + static_cast<int>(log_tie_prevalence.size());
  }

  // True when outcomes of this order carry positive probability.
  bool admits(int order) const;

  // gamma_t; 0 for order 1 and -infinity for excluded orders. Throws
  // ModelError if order < 1 or order > max_tie_order().
  double log_delta(int order) const;

  // Shifts every lambda so that the reference item's entry is exactly 0.
  void normalize();

  // All strengths equal, every tie order 2..max_tie_order admitted with
  // delta_t = 1, reference item the last item.
  static ModelParams neutral(int num_items, int max_tie_order);
};

// Label of a winning set in the expanded-table convention, e.g. "A=B=C".
std::string outcome_label(const ItemSet& members,
                          const std::vector<std::string>& items);

}  // namespace dluce

#endif  // DLUCE_TYPES_HPP_
