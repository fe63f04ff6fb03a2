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

#include "dluce/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace dluce {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_items(const ModelParams& params, int num_items) {
  if (params.num_items() != num_items) {
    throw ModelError("parameters cover " + std::to_string(params.num_items()) +
                     " items, data has " + std::to_string(num_items));
  }
}

// Log weights, log normalizer and log probabilities of one outcome space.
struct LogDistribution {
  std::vector<double> log_prob;  // -inf for excluded orders
  double log_normalizer = 0.0;
};

LogDistribution evaluate(const std::vector<ItemSet>& space,
                         const ModelParams& params) {
  if (space.empty()) throw ModelError("empty outcome space");
  LogDistribution dist;
  dist.log_prob.resize(space.size());
  double max_weight = kNegInf;
  for (std::size_t k = 0; k < space.size(); ++k) {
    dist.log_prob[k] = log_weight(space[k], params);
    max_weight = std::max(max_weight, dist.log_prob[k]);
  }
  if (max_weight == kNegInf) {
    throw ModelError("no outcome in the space has positive probability");
  }
  double sum = 0.0;
  for (double w : dist.log_prob) sum += std::exp(w - max_weight);
  dist.log_normalizer = max_weight + std::log(sum);
  for (double& w : dist.log_prob) w -= dist.log_normalizer;
  return dist;
}

// Sparse design vector x_T over the free parameters.
using SparseRow = std::vector<std::pair<int, double>>;

void design_row(const ItemSet& members, const ParameterLayout& layout,
                SparseRow& row) {
  row.clear();
  const double share = 1.0 / static_cast<double>(members.size());
  for (ItemIndex i : members) {
    if (layout.item_slot[i] >= 0) row.emplace_back(layout.item_slot[i], share);
  }
  const int slot = layout.order_slot[members.size()];
  if (slot >= 0) row.emplace_back(slot, 1.0);
}

void check_layout(const ParameterLayout& layout, const CompiledDesign& design,
                  const ModelParams& params) {
  check_items(params, design.num_items);
  if (static_cast<int>(layout.item_slot.size()) != design.num_items ||
      static_cast<int>(layout.order_slot.size()) != params.max_tie_order() + 1) {
    throw ModelError("parameter layout does not match the model");
  }
  if (design.max_tie_order != params.max_tie_order()) {
    throw ModelError("design and parameters disagree on max tie order");
  }
}

}  // namespace

double log_weight(const ItemSet& members, const ModelParams& params) {
  if (members.empty()) throw ModelError("empty winning set");
  const int t = static_cast<int>(members.size());
  const double gamma = params.log_delta(t);
  double sum = 0.0;
  for (ItemIndex i : members) {
    if (i < 0 || i >= params.num_items()) {
      throw ModelError("unknown item index " + std::to_string(i));
    }
    sum += params.log_strength[i];
  }
  return gamma + sum / t;
}

OutcomeDistribution outcome_distribution(const ItemSet& comparison,
                                         const std::vector<ItemSet>& space,
                                         const ModelParams& params) {
  LogDistribution log_dist = evaluate(space, params);
  OutcomeDistribution dist;
  dist.comparison = comparison;
  dist.outcomes = space;
  dist.log_normalizer = log_dist.log_normalizer;
  dist.probabilities.reserve(space.size());
  for (double lp : log_dist.log_prob) dist.probabilities.push_back(std::exp(lp));
  return dist;
}

OutcomeDistribution outcome_distribution(const ItemSet& comparison,
                                         const ModelParams& params) {
  return outcome_distribution(
      comparison, enumerate_outcomes(comparison, params.max_tie_order()),
      params);
}

PairProbabilities davidson_pair_distribution(double alpha_i, double alpha_j,
                                             double delta) {
  if (!(alpha_i > 0.0) || !(alpha_j > 0.0) || !std::isfinite(alpha_i) ||
      !std::isfinite(alpha_j)) {
    throw ModelError("strengths must be positive and finite");
  }
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw ModelError("tie prevalence must be non-negative and finite");
  }
  ModelParams params;
  params.log_strength = {std::log(alpha_i), std::log(alpha_j)};
  params.log_tie_prevalence = {delta > 0.0 ? std::optional(std::log(delta))
                                           : std::nullopt};
  params.reference_item = 1;
  // Outcomes in enumeration order: {i}, {j}, {i, j}.
  const OutcomeDistribution dist = outcome_distribution({0, 1}, params);
  return {dist.probabilities[0], dist.probabilities[1], dist.probabilities[2]};
}

std::string ParameterLayout::name(int slot,
                                  const std::vector<std::string>& items) const {
  const int num_free_items = static_cast<int>(free_items.size());
  if (slot < 0 || slot >= size()) throw ModelError("parameter slot out of range");
  if (slot < num_free_items) return items.at(free_items[slot]);
  return "delta" + std::to_string(free_orders[slot - num_free_items]);
}

ParameterLayout make_layout(const ModelParams& params, bool fixed_strengths) {
  ParameterLayout layout;
  layout.item_slot.assign(params.num_items(), -1);
  layout.order_slot.assign(params.max_tie_order() + 1, -1);
  int next = 0;
  if (!fixed_strengths) {
    for (ItemIndex i = 0; i < params.num_items(); ++i) {
      if (i == params.reference_item) continue;
      layout.item_slot[i] = next++;
      layout.free_items.push_back(i);
    }
  }
  for (int t = 2; t <= params.max_tie_order(); ++t) {
    if (!params.admits(t)) continue;
    layout.order_slot[t] = next++;
    layout.free_orders.push_back(t);
  }
  return layout;
}

Eigen::VectorXd pack(const ModelParams& params, const ParameterLayout& layout) {
  Eigen::VectorXd theta(layout.size());
  int slot = 0;
  for (ItemIndex i : layout.free_items) theta[slot++] = params.log_strength.at(i);
  for (int t : layout.free_orders) theta[slot++] = params.log_delta(t);
  return theta;
}

void unpack(const Eigen::VectorXd& theta, const ParameterLayout& layout,
            ModelParams& params) {
  if (theta.size() != layout.size()) {
    throw ModelError("parameter vector has the wrong length");
  }
  int slot = 0;
  for (ItemIndex i : layout.free_items) params.log_strength.at(i) = theta[slot++];
  for (int t : layout.free_orders) params.log_tie_prevalence.at(t - 2) = theta[slot++];
}

double log_likelihood(const CompiledDesign& design, const ModelParams& params) {
  check_items(params, design.num_items);
  if (design.max_tie_order != params.max_tie_order()) {
    throw ModelError("design and parameters disagree on max tie order");
  }
  double loglik = 0.0;
  for (const ComparisonBlock& block : design.blocks) {
    const LogDistribution dist = evaluate(block.outcomes, params);
    for (std::size_t k = 0; k < block.outcomes.size(); ++k) {
      if (block.counts[k] == 0.0) continue;
      if (dist.log_prob[k] == kNegInf) {
        throw ModelError("observed tie of order " +
                         std::to_string(block.outcomes[k].size()) +
                         " is excluded by the model");
      }
      loglik += block.counts[k] * dist.log_prob[k];
    }
  }
  return loglik;
}

double log_likelihood(const Dataset& data, const ModelParams& params) {
  check_items(params, data.num_items());
  return log_likelihood(compile_design(data, params.max_tie_order()), params);
}

Eigen::VectorXd score(const CompiledDesign& design, const ModelParams& params,
                      const ParameterLayout& layout) {
  check_layout(layout, design, params);
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(layout.size());
  Eigen::VectorXd mean(layout.size());
  SparseRow row;
  for (const ComparisonBlock& block : design.blocks) {
    const LogDistribution dist = evaluate(block.outcomes, params);
    mean.setZero();
    for (std::size_t k = 0; k < block.outcomes.size(); ++k) {
      const double p = std::exp(dist.log_prob[k]);
      const double count = block.counts[k];
      if (dist.log_prob[k] == kNegInf) {
        if (count == 0.0) continue;
        throw ModelError("observed tie of order " +
                         std::to_string(block.outcomes[k].size()) +
                         " is excluded by the model");
      }
      design_row(block.outcomes[k], layout, row);
      for (auto [slot, x] : row) {
        mean[slot] += p * x;
        grad[slot] += count * x;
      }
    }
    grad -= block.contests * mean;
  }
  return grad;
}

Eigen::VectorXd score(const Dataset& data, const ModelParams& params) {
  check_items(params, data.num_items());
  return score(compile_design(data, params.max_tie_order()), params,
               make_layout(params));
}

Eigen::MatrixXd fisher_information(const CompiledDesign& design,
                                   const ModelParams& params,
                                   const ParameterLayout& layout) {
  check_layout(layout, design, params);
  const int dim = layout.size();
  Eigen::MatrixXd info = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::VectorXd mean(dim);
  Eigen::MatrixXd second(dim, dim);
  SparseRow row;
  for (const ComparisonBlock& block : design.blocks) {
    const LogDistribution dist = evaluate(block.outcomes, params);
    mean.setZero();
    second.setZero();
    for (std::size_t k = 0; k < block.outcomes.size(); ++k) {
      if (dist.log_prob[k] == kNegInf) continue;
      const double p = std::exp(dist.log_prob[k]);
      design_row(block.outcomes[k], layout, row);
      for (auto [a, xa] : row) {
        mean[a] += p * xa;
        for (auto [b, xb] : row) second(a, b) += p * xa * xb;
      }
    }
    info += block.contests * (second - mean * mean.transpose());
  }
  // Symmetric by construction up to rounding in the outer product.
  return 0.5 * (info + info.transpose());
}

Eigen::MatrixXd fisher_information(const Dataset& data,
                                   const ModelParams& params) {
  check_items(params, data.num_items());
  return fisher_information(compile_design(data, params.max_tie_order()),
                            params, make_layout(params));
}

SufficientStatistics sufficient_statistics(const Dataset& data) {
  data.validate();
  SufficientStatistics stats;
  stats.item_scores.assign(data.num_items(), 0.0);
  stats.tie_counts.assign(std::max(2, data.max_observed_tie_order() + 1), 0);
  for (const Contest& contest : data.contests) {
    const int t = contest.tie_order();
    for (ItemIndex i : contest.winners) stats.item_scores[i] += 1.0 / t;
    if (t >= 2) ++stats.tie_counts[t];
  }
  return stats;
}

}  // namespace dluce
