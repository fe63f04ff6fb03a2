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

// Maximum-likelihood fitting of the Davidson-Luce model by Fisher scoring,
// with goodness-of-fit statistics, standard errors, points totals and
// existence (connectivity) diagnostics.

#ifndef DLUCE_ESTIMATION_HPP_
#define DLUCE_ESTIMATION_HPP_

#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "dluce/model.hpp"
#include "dluce/types.hpp"

namespace dluce {

struct ConnectivityReport {
  bool strongly_connected = false;
  // Strongly connected components of the win/tie graph, each sorted, ordered
  // by smallest member.
  std::vector<ItemSet> components;
  // Items that are never part of a winning set.
  ItemSet never_winning_items;
};

// Builds the directed graph with an edge i -> j whenever some contest has i
// among the winners and j compared but not winning, and edges both ways
// between co-winners of a tie, and reports its strong connectivity.
ConnectivityReport check_connectivity(const Dataset& data);

// Thrown when the Fisher information is singular on the free parameters.
class SingularInformation : public std::runtime_error {
 public:
  SingularInformation(const std::string& what, Eigen::VectorXd null_direction)
      : std::runtime_error(what), null_direction_(std::move(null_direction)) {}

  // Unit vector (in ParameterLayout coordinates) spanning the near-null
  // space of the information matrix.
  const Eigen::VectorXd& null_direction() const { return null_direction_; }

 private:
  Eigen::VectorXd null_direction_;
};

// Square roots of the diagonal of the inverse information. Throws
// SingularInformation when the smallest eigenvalue is not positive relative
// to the largest.
Eigen::VectorXd standard_errors(const Eigen::MatrixXd& information);

// Inverse of a nonsingular information matrix; throws SingularInformation.
Eigen::MatrixXd invert_information(const Eigen::MatrixXd& information);

struct FitConfig {
  double tol = 1e-8;  // on the infinity norm of the score
  int max_iter = 100;
  int step_halving_max = 20;
  std::optional<ItemIndex> reference_item;  // default: last item
  std::optional<int> max_tie_order;         // default: largest observed
  bool equal_strengths = false;             // fix every lambda at 0
};

struct FitReport {
  ModelParams params;
  ParameterLayout layout;
  Eigen::VectorXd std_errors;  // per free parameter, layout order
  Eigen::MatrixXd covariance;  // inverse information at the estimate
  double loglik = 0.0;
  double deviance = 0.0;        // -2 * loglik
  double pearson_chi_sq = 0.0;  // over every admitted outcome row
  int residual_df = 0;
  int iterations = 0;
  bool converged = false;
  double score_norm = 0.0;  // infinity norm at the returned estimate
  // Log-likelihood at the start and after every accepted step.
  std::vector<double> loglik_trace;
  ConnectivityReport connectivity;
  SufficientStatistics sufficient_stats;
};

// Fisher scoring from theta = 0 with step halving whenever the
// log-likelihood would decrease. Tie orders at or below the working
// max_tie_order that never occur in the data are excluded (delta_t = 0).
//
// A report with converged = false is returned when max_iter is exhausted or
// a step cannot be made to increase the likelihood. Throws ModelError for
// empty or invalid data, and SingularInformation (after a connectivity
// check) when the information is singular.
FitReport fit(const Dataset& data, const FitConfig& config = {});

// Pearson statistic sum (y - mu)^2 / mu over every admitted outcome row of
// every contest, y the observed indicator.
double pearson_chi_squared(const CompiledDesign& design,
                           const ModelParams& params);

// Number of admitted outcome rows over all contests.
int admitted_rows(const CompiledDesign& design, const ModelParams& params);

// Tournament points: each contest awards `points_per_contest`, shared
// equally among the winners.
std::vector<double> observed_points(const Dataset& data,
                                    double points_per_contest);

// Expected points under `params`.
std::vector<double> expected_points(const Dataset& data,
                                    const ModelParams& params,
                                    double points_per_contest);

}  // namespace dluce

#endif  // DLUCE_ESTIMATION_HPP_
