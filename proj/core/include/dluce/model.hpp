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

// Outcome probabilities, log-likelihood, score and Fisher information of the
// Davidson-Luce model.
//
// A winning set T of size t drawn from a comparison set S has weight
//
//   p_T = delta_t * (prod_{i in T} alpha_i)^(1/t),    delta_1 = 1,
//
// and probability p_T / sum_{U subset S} p_U. Everything here works on the
// log scale: log p_T = gamma_t + mean_{i in T} lambda_i.
//
// The model is a full exponential family. With free parameters theta (the
// non-reference lambdas and the admitted gammas), log p_T is linear in theta
// with design vector x_T (1/t for each free member of T, 1 in the slot of
// order t), so the score is the observed minus expected sum of x and the
// Fisher information is the sum over contests of Cov(x).
//
// All functions are pure. Reductions over contests run in CompiledDesign
// block order, which is deterministic for a given dataset.

#ifndef DLUCE_MODEL_HPP_
#define DLUCE_MODEL_HPP_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dluce/outcome_space.hpp"
#include "dluce/types.hpp"

namespace dluce {

// log p_T. Throws ModelError for unknown items or orders above
// params.max_tie_order(); returns -infinity for excluded orders.
double log_weight(const ItemSet& members, const ModelParams& params);

struct OutcomeDistribution {
  ItemSet comparison;
  std::vector<ItemSet> outcomes;
  std::vector<double> probabilities;  // exactly 0 for excluded orders
  double log_normalizer = 0.0;        // log sum_T p_T
};

// Normalizes log weights over `space` with log-sum-exp. Throws ModelError if
// `space` is empty or admits no outcome.
OutcomeDistribution outcome_distribution(const ItemSet& comparison,
                                         const std::vector<ItemSet>& space,
                                         const ModelParams& params);

// Same, over enumerate_outcomes(comparison, params.max_tie_order()).
OutcomeDistribution outcome_distribution(const ItemSet& comparison,
                                         const ModelParams& params);

struct PairProbabilities {
  double first_wins = 0.0;
  double second_wins = 0.0;
  double tie = 0.0;
};

// Davidson's model for a single pair: probabilities proportional to
// alpha_i, alpha_j and delta * sqrt(alpha_i * alpha_j). delta = 0 gives
// Bradley-Terry. Throws ModelError for non-positive strengths or negative
// delta.
PairProbabilities davidson_pair_distribution(double alpha_i, double alpha_j,
                                             double delta);

// Maps free parameters to positions in a flat vector: non-reference item
// strengths in universe order, followed by admitted tie orders ascending.
struct ParameterLayout {
  std::vector<int> item_slot;   // per item; -1 when fixed
  std::vector<int> order_slot;  // per order 0..max_tie_order; -1 when fixed
  std::vector<ItemIndex> free_items;
  std::vector<int> free_orders;

  int size() const {
    return static_cast<int>(free_items.size() + free_orders.size());
  }
  // "A" for items, "delta2" for tie orders.
  std::string name(int slot, const std::vector<std::string>& items) const;
};

// With `fixed_strengths`, no lambda is free (the equal-strength model).
ParameterLayout make_layout(const ModelParams& params,
                            bool fixed_strengths = false);

Eigen::VectorXd pack(const ModelParams& params, const ParameterLayout& layout);
void unpack(const Eigen::VectorXd& theta, const ParameterLayout& layout,
            ModelParams& params);

// Throws ModelError if an observed outcome lies outside the outcome space
// (order above max_tie_order or an excluded order), or if the parameter
// vector does not cover the dataset's items.
double log_likelihood(const Dataset& data, const ModelParams& params);
double log_likelihood(const CompiledDesign& design, const ModelParams& params);

Eigen::VectorXd score(const Dataset& data, const ModelParams& params);
Eigen::VectorXd score(const CompiledDesign& design, const ModelParams& params,
                      const ParameterLayout& layout);

Eigen::MatrixXd fisher_information(const Dataset& data,
                                   const ModelParams& params);
Eigen::MatrixXd fisher_information(const CompiledDesign& design,
                                   const ModelParams& params,
                                   const ParameterLayout& layout);

// Per-item fractional win score (a t-way tied win counts 1/t) and the number
// of observed ties of each order; tie_counts[t] for t = 0..max observed order,
// entries 0 and 1 always zero.
struct SufficientStatistics {
  std::vector<double> item_scores;
  std::vector<int> tie_counts;

  int ties_of_order(int t) const {
    return t < static_cast<int>(tie_counts.size()) ? tie_counts[t] : 0;
  }
};

SufficientStatistics sufficient_statistics(const Dataset& data);

}  // namespace dluce

#endif  // DLUCE_MODEL_HPP_
