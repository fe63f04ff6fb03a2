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

#include "dluce/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "dluce/outcome_space.hpp"

namespace dluce {
namespace {

// Relative eigenvalue floor below which the information is singular.
constexpr double kSingularTol = 1e-12;

struct Spectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

Spectrum checked_eigen(const Eigen::MatrixXd& information) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(information);
  if (solver.info() != Eigen::Success) {
    throw SingularInformation("eigen decomposition of information failed",
                              Eigen::VectorXd());
  }
  const Eigen::VectorXd& values = solver.eigenvalues();  // ascending
  const double scale = std::max(values.cwiseAbs().maxCoeff(), 1.0);
  if (!(values[0] > kSingularTol * scale)) {
    throw SingularInformation(
        "Fisher information is singular (smallest eigenvalue " +
            std::to_string(values[0]) + "); parameters are not identifiable",
        solver.eigenvectors().col(0));
  }
  return {values, solver.eigenvectors()};
}

}  // namespace

Eigen::MatrixXd invert_information(const Eigen::MatrixXd& information) {
  if (information.rows() != information.cols()) {
    throw ModelError("information matrix is not square");
  }
  if (information.rows() == 0) return Eigen::MatrixXd(0, 0);
  const Spectrum eig = checked_eigen(information);
  return eig.vectors * eig.values.cwiseInverse().asDiagonal() *
         eig.vectors.transpose();
}

Eigen::VectorXd standard_errors(const Eigen::MatrixXd& information) {
  return invert_information(information).diagonal().cwiseSqrt();
}

double pearson_chi_squared(const CompiledDesign& design,
                           const ModelParams& params) {
  double chi_sq = 0.0;
  for (const ComparisonBlock& block : design.blocks) {
    const OutcomeDistribution dist =
        outcome_distribution(block.comparison, block.outcomes, params);
    for (std::size_t k = 0; k < block.outcomes.size(); ++k) {
      if (!params.admits(static_cast<int>(block.outcomes[k].size()))) continue;
      const double mu = dist.probabilities[k];
      const double hits = block.counts[k];
      // Rows with y = 1 contribute (1 - mu)^2 / mu, rows with y = 0 contribute mu.
      chi_sq += hits * (1.0 - mu) * (1.0 - mu) / mu + (block.contests - hits) * mu;
    }
  }
  return chi_sq;
}

int admitted_rows(const CompiledDesign& design, const ModelParams& params) {
  int rows = 0;
  for (const ComparisonBlock& block : design.blocks) {
    int per_contest = 0;
    for (const ItemSet& outcome : block.outcomes) {
      if (params.admits(static_cast<int>(outcome.size()))) ++per_contest;
    }
    rows += per_contest * block.contests;
  }
  return rows;
}

FitReport fit(const Dataset& data, const FitConfig& config) {
  data.validate();
  if (data.contests.empty()) throw ModelError("cannot fit an empty dataset");
  if (!(config.tol > 0.0)) throw ModelError("tol must be positive");
  if (config.max_iter < 1) throw ModelError("max_iter must be >= 1");
  if (config.step_halving_max < 0) throw ModelError("step_halving_max must be >= 0");

  const int observed_order = data.max_observed_tie_order();
  const int max_order = config.max_tie_order.value_or(observed_order);
  if (max_order < observed_order) {
    throw ModelError("max tie order " + std::to_string(max_order) +
                     " is below the observed tie order " +
                     std::to_string(observed_order));
  }

  FitReport report;
  report.sufficient_stats = sufficient_statistics(data);
  report.connectivity = check_connectivity(data);

  ModelParams params = ModelParams::neutral(data.num_items(), max_order);
  for (int t = 2; t <= max_order; ++t) {
    if (report.sufficient_stats.ties_of_order(t) == 0) {
      params.log_tie_prevalence[t - 2].reset();
    }
  }
  if (config.reference_item) {
    if (*config.reference_item < 0 || *config.reference_item >= data.num_items()) {
      throw ModelError("reference item out of range");
    }
    params.reference_item = *config.reference_item;
  }
  const ParameterLayout layout = make_layout(params, config.equal_strengths);
  const CompiledDesign design = compile_design(data, max_order);

  Eigen::VectorXd theta = pack(params, layout);
  double loglik = log_likelihood(design, params);
  report.loglik_trace.push_back(loglik);

  ModelParams trial = params;
  while (true) {
    const Eigen::VectorXd grad = score(design, params, layout);
    report.score_norm = grad.size() ? grad.lpNorm<Eigen::Infinity>() : 0.0;
    if (report.score_norm <= config.tol) {
      report.converged = true;
      break;
    }
    if (report.iterations >= config.max_iter) break;

    const Eigen::MatrixXd info = fisher_information(design, params, layout);
    Eigen::LLT<Eigen::MatrixXd> llt(info);
    if (llt.info() != Eigen::Success) {
      checked_eigen(info);  // throws with the null direction
      throw SingularInformation("Fisher information is not positive definite",
                                Eigen::VectorXd());
    }
    const Eigen::VectorXd step = llt.solve(grad);

    // Rounding slack so a converging fit is not stalled by last-bit noise.
    const double slack = 1e-12 * std::max(1.0, std::abs(loglik));
    bool accepted = false;
    double scale = 1.0;
    for (int h = 0; h <= config.step_halving_max; ++h, scale *= 0.5) {
      const Eigen::VectorXd candidate = theta + scale * step;
      unpack(candidate, layout, trial);
      const double trial_loglik = log_likelihood(design, trial);
      if (std::isfinite(trial_loglik) && trial_loglik >= loglik - slack) {
        theta = candidate;
        params = trial;
        loglik = trial_loglik;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    ++report.iterations;
    report.loglik_trace.push_back(loglik);
  }

  report.params = params;
  report.layout = layout;
  report.loglik = loglik;
  report.deviance = -2.0 * loglik;
  report.pearson_chi_sq = pearson_chi_squared(design, params);
  report.residual_df =
      admitted_rows(design, params) - design.num_contests - layout.size();

  const Eigen::MatrixXd info = fisher_information(design, params, layout);
  try {
    report.covariance = invert_information(info);
    report.std_errors = report.covariance.diagonal().cwiseSqrt();
  } catch (const SingularInformation&) {
    if (report.converged) throw;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    report.covariance = Eigen::MatrixXd::Constant(layout.size(), layout.size(), nan);
    report.std_errors = Eigen::VectorXd::Constant(layout.size(), nan);
  }
  return report;
}

std::vector<double> observed_points(const Dataset& data,
                                    double points_per_contest) {
  data.validate();
  std::vector<double> points(data.num_items(), 0.0);
  for (const Contest& contest : data.contests) {
    const double share = points_per_contest / contest.tie_order();
    for (ItemIndex i : contest.winners) points[i] += share;
  }
  return points;
}

std::vector<double> expected_points(const Dataset& data,
                                    const ModelParams& params,
                                    double points_per_contest) {
  data.validate();
  if (params.num_items() != data.num_items()) {
    throw ModelError("parameters do not cover the dataset's items");
  }
  std::vector<double> points(data.num_items(), 0.0);
  for (const Contest& contest : data.contests) {
    const OutcomeDistribution dist =
        outcome_distribution(contest.comparison, params);
    for (std::size_t k = 0; k < dist.outcomes.size(); ++k) {
      const double share =
          points_per_contest * dist.probabilities[k] / dist.outcomes[k].size();
      for (ItemIndex i : dist.outcomes[k]) points[i] += share;
    }
  }
  return points;
}

}  // namespace dluce
