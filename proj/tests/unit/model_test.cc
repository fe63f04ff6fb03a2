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

#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "dluce/estimation.hpp"
#include "oracle.hpp"
#include "test_support.hpp"

namespace dluce {
namespace {

using testing::golden_params;
using testing::random_params;
using testing::random_subset;
using testing::triples_round_robin;

double prob_of(const OutcomeDistribution& dist, const ItemSet& members) {
  for (std::size_t k = 0; k < dist.outcomes.size(); ++k) {
    if (dist.outcomes[k] == members) return dist.probabilities[k];
  }
  ADD_FAILURE() << "outcome not in distribution";
  return -1.0;
}

ModelParams equal_strength_params(int n, double delta2, double delta3) {
  ModelParams params = ModelParams::neutral(n, 3);
  params.log_tie_prevalence = {std::log(delta2), std::log(delta3)};
  return params;
}

TEST(LogWeightTest, SingletonAtZeroStrengthIsZero) {
  const ModelParams params = ModelParams::neutral(2, 2);
  EXPECT_EQ(log_weight({0}, params), 0.0);
}

TEST(LogWeightTest, PairUsesMeanLogStrengthPlusGamma) {
  // 2.390 + (6.864 + 2.071) / 2
  EXPECT_NEAR(log_weight({1, 2}, golden_params()), 6.8575, 1e-12);
}

TEST(LogWeightTest, EqualStrengthTripleIsLogDelta3) {
  const ModelParams params = equal_strength_params(3, 2.0, 3.0);
  EXPECT_NEAR(log_weight({0, 1, 2}, params), std::log(3.0), 1e-15);
  EXPECT_NEAR(log_weight({0, 1, 2}, params), 1.0986, 1e-4);
}

TEST(LogWeightTest, RejectsUnknownItemAndExcessOrder) {
  const ModelParams params = ModelParams::neutral(3, 2);
  EXPECT_THROW(log_weight({0, 7}, params), ModelError);
  EXPECT_THROW(log_weight({0, 1, 2}, params), ModelError);
  EXPECT_THROW(log_weight({}, params), ModelError);
}

TEST(LogWeightTest, ExcludedOrderHasZeroWeight) {
  ModelParams params = ModelParams::neutral(3, 3);
  params.log_tie_prevalence[0].reset();
  EXPECT_EQ(log_weight({0, 1}, params), -INFINITY);
  EXPECT_TRUE(std::isfinite(log_weight({0, 1, 2}, params)));
}

TEST(OutcomeDistributionTest, EqualStrengthThreeWayTieIsOneQuarter) {
  // Weights 1, 1, 1, 2, 2, 2, 3: P(3-way tie) = 3 / 12.
  const OutcomeDistribution dist =
      outcome_distribution({0, 1, 2}, equal_strength_params(3, 2.0, 3.0));
  EXPECT_NEAR(prob_of(dist, {0, 1, 2}), 0.25, 1e-15);
  EXPECT_NEAR(prob_of(dist, {0}), 1.0 / 12.0, 1e-15);
  EXPECT_NEAR(prob_of(dist, {1, 2}), 2.0 / 12.0, 1e-15);
}

TEST(OutcomeDistributionTest, PairWithoutTiesIsFair) {
  const OutcomeDistribution dist = outcome_distribution({0, 1}, ModelParams::neutral(2, 1));
  ASSERT_EQ(dist.outcomes.size(), 2u);
  EXPECT_EQ(dist.probabilities[0], 0.5);
  EXPECT_EQ(dist.probabilities[1], 0.5);
}

TEST(OutcomeDistributionTest, GoldenEstimatesReproduceFittedBlock) {
  const OutcomeDistribution dist = outcome_distribution({0, 1, 2}, golden_params());
  EXPECT_NEAR(prob_of(dist, {0, 1, 2}), 0.25423, 1e-3);
  EXPECT_NEAR(prob_of(dist, {1}), 0.24096, 1e-3);
  EXPECT_NEAR(prob_of(dist, {0, 1}), 0.23950, 1e-3);
}

TEST(OutcomeDistributionTest, RejectsEmptySpace) {
  EXPECT_THROW(outcome_distribution({0, 1}, {}, ModelParams::neutral(2, 2)), ModelError);
}

TEST(OutcomeDistributionTest, LogNormalizerIsLogSumOfWeights) {
  const OutcomeDistribution dist =
      outcome_distribution({0, 1, 2}, equal_strength_params(3, 2.0, 3.0));
  EXPECT_NEAR(dist.log_normalizer, std::log(12.0), 1e-14);
}

TEST(OutcomeDistributionTest, ExtremeStrengthsStayFinite) {
  ModelParams params = ModelParams::neutral(3, 3);
  params.log_strength = {800.0, -800.0, 0.0};
  const OutcomeDistribution dist = outcome_distribution({0, 1, 2}, params);
  double total = 0.0;
  for (double p : dist.probabilities) {
    EXPECT_TRUE(std::isfinite(p));
    total += p;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(prob_of(dist, {0}), 1.0, 1e-12);
}

TEST(OutcomeDistributionProperty, NormalizedOverRandomContests) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> size(2, 6);
  for (int trial = 0; trial < 1000; ++trial) {
    const int r = size(rng);
    const ModelParams params = random_params(rng, 8, 1 + trial % r, 4.0);
    const OutcomeDistribution dist = outcome_distribution(random_subset(rng, 8, r), params);
    const double total =
        std::accumulate(dist.probabilities.begin(), dist.probabilities.end(), 0.0);
    ASSERT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(OutcomeDistributionProperty, ScaleInvariance) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> shift(-10.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const ModelParams params = random_params(rng, 6, 4);
    ModelParams shifted = params;
    const double c = shift(rng);
    for (double& lambda : shifted.log_strength) lambda += c;
    const ItemSet comparison = random_subset(rng, 6, 2 + trial % 5);
    const OutcomeDistribution a = outcome_distribution(comparison, params);
    const OutcomeDistribution b = outcome_distribution(comparison, shifted);
    for (std::size_t k = 0; k < a.probabilities.size(); ++k) {
      ASSERT_NEAR(a.probabilities[k], b.probabilities[k], 1e-12);
    }
  }
}

TEST(OutcomeDistributionProperty, LuceCompatibilityGivenNoTie) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const ModelParams params = random_params(rng, 7, 5);
    const ItemSet comparison = random_subset(rng, 7, 2 + trial % 6);
    const OutcomeDistribution dist = outcome_distribution(comparison, params);
    double singles = 0.0, alpha_total = 0.0;
    for (ItemIndex i : comparison) {
      singles += prob_of(dist, {i});
      alpha_total += std::exp(params.log_strength[i]);
    }
    for (ItemIndex i : comparison) {
      ASSERT_NEAR(prob_of(dist, {i}) / singles,
                  std::exp(params.log_strength[i]) / alpha_total, 1e-12);
    }
  }
}

TEST(OutcomeDistributionProperty, LuceReductionWithoutTies) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const ModelParams params = random_params(rng, 6, 1);
    const ItemSet comparison = random_subset(rng, 6, 2 + trial % 5);
    const OutcomeDistribution dist = outcome_distribution(comparison, params);
    ASSERT_EQ(dist.outcomes.size(), comparison.size());
    double alpha_total = 0.0;
    for (ItemIndex i : comparison) alpha_total += std::exp(params.log_strength[i]);
    for (ItemIndex i : comparison) {
      ASSERT_NEAR(prob_of(dist, {i}), std::exp(params.log_strength[i]) / alpha_total, 1e-12);
    }
  }
}

TEST(DavidsonPairTest, EqualStrengthTieIsDeltaOverTwoPlusDelta) {
  for (double delta : {0.5, 1.0, 3.0}) {
    const PairProbabilities p = davidson_pair_distribution(2.5, 2.5, delta);
    EXPECT_NEAR(p.tie, delta / (2.0 + delta), 1e-15);
    EXPECT_NEAR(p.first_wins, p.second_wins, 1e-15);
  }
  EXPECT_NEAR(davidson_pair_distribution(1.0, 1.0, 1.0).tie, 1.0 / 3.0, 1e-15);
}

TEST(DavidsonPairTest, ZeroDeltaIsBradleyTerry) {
  const PairProbabilities p = davidson_pair_distribution(3.0, 1.0, 0.0);
  EXPECT_NEAR(p.first_wins, 0.75, 1e-15);
  EXPECT_NEAR(p.second_wins, 0.25, 1e-15);
  EXPECT_EQ(p.tie, 0.0);
}

TEST(DavidsonPairTest, DirectEvaluation) {
  // Weights 4, 1, sqrt(4) = 2.
  const PairProbabilities p = davidson_pair_distribution(4.0, 1.0, 1.0);
  EXPECT_NEAR(p.first_wins, 4.0 / 7.0, 1e-15);
  EXPECT_NEAR(p.second_wins, 1.0 / 7.0, 1e-15);
  EXPECT_NEAR(p.tie, 2.0 / 7.0, 1e-15);
}

TEST(DavidsonPairTest, RejectsNonPositiveStrength) {
  EXPECT_THROW(davidson_pair_distribution(0.0, 1.0, 1.0), ModelError);
  EXPECT_THROW(davidson_pair_distribution(1.0, -2.0, 1.0), ModelError);
  EXPECT_THROW(davidson_pair_distribution(1.0, 1.0, -0.1), ModelError);
}

TEST(DavidsonPairProperty, EqualsGeneralModelExactly) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    ModelParams params = ModelParams::neutral(2, 2);
    params.log_strength = {u(rng), u(rng)};
    params.log_tie_prevalence = {u(rng)};
    const PairProbabilities pair =
        davidson_pair_distribution(std::exp(params.log_strength[0]),
                                   std::exp(params.log_strength[1]),
                                   std::exp(*params.log_tie_prevalence[0]));
    const OutcomeDistribution dist = outcome_distribution({0, 1}, params);
    // Same arithmetic path up to exp/log round trips of the inputs.
    EXPECT_NEAR(pair.first_wins, dist.probabilities[0], 1e-15);
    EXPECT_NEAR(pair.second_wins, dist.probabilities[1], 1e-15);
    EXPECT_NEAR(pair.tie, dist.probabilities[2], 1e-15);
  }
}

TEST(TieMaximizationProperty, PairTieMaximalAtEqualStrength) {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> log_ratio(-6.0, 6.0);
  std::uniform_real_distribution<double> log_delta(-3.0, 3.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double delta = std::exp(log_delta(rng));
    const double rho = std::exp(log_ratio(rng));
    // alpha_i * alpha_j = 1 with alpha_i / alpha_j = rho.
    const PairProbabilities unequal =
        davidson_pair_distribution(std::sqrt(rho), 1.0 / std::sqrt(rho), delta);
    const PairProbabilities equal = davidson_pair_distribution(1.0, 1.0, delta);
    ASSERT_LE(unequal.tie, equal.tie + 1e-15);
  }
}

TEST(TieMaximizationProperty, FullTieMaximalAtEqualStrengthForFixedProduct) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> size(2, 6);
  for (int trial = 0; trial < 1000; ++trial) {
    const int r = size(rng);
    ModelParams params = random_params(rng, r, r, 3.0);
    const double mean =
        std::accumulate(params.log_strength.begin(), params.log_strength.end(), 0.0) / r;
    for (double& lambda : params.log_strength) lambda -= mean;  // product 1
    ModelParams equal = params;
    std::fill(equal.log_strength.begin(), equal.log_strength.end(), 0.0);
    ItemSet all(r);
    std::iota(all.begin(), all.end(), 0);
    const double p = outcome_distribution(all, params).probabilities.back();
    const double p_equal = outcome_distribution(all, equal).probabilities.back();
    ASSERT_LE(p, p_equal + 1e-15);
  }
}

TEST(LogLikelihoodTest, EmptyDatasetIsZero) {
  Dataset data;
  data.items = {"A", "B"};
  EXPECT_EQ(log_likelihood(data, ModelParams::neutral(2, 2)), 0.0);
}

TEST(LogLikelihoodTest, NeutralParamsOnTriplesGiveSevenEqualOutcomes) {
  EXPECT_NEAR(log_likelihood(triples_round_robin(), ModelParams::neutral(4, 3)),
              -4.0 * std::log(7.0), 1e-13);
}

TEST(LogLikelihoodTest, GoldenEstimatesGiveHalfDeviance) {
  EXPECT_NEAR(log_likelihood(triples_round_robin(), golden_params()),
              -11.35986 / 2.0, 1e-4);
}

TEST(LogLikelihoodTest, AdditiveOverContests) {
  const Dataset data = triples_round_robin();
  const ModelParams params = golden_params();
  double sum = 0.0;
  for (const Contest& c : data.contests) {
    Dataset single{data.items, {c}};
    sum += log_likelihood(single, params);
  }
  EXPECT_NEAR(log_likelihood(data, params), sum, 1e-13);
}

TEST(LogLikelihoodTest, ObservedOrderOutsideSpaceThrows) {
  EXPECT_THROW(log_likelihood(triples_round_robin(), ModelParams::neutral(4, 2)),
               ModelError);
  ModelParams excluded = ModelParams::neutral(4, 3);
  excluded.log_tie_prevalence[0].reset();
  EXPECT_THROW(log_likelihood(triples_round_robin(), excluded), ModelError);
  EXPECT_THROW(score(triples_round_robin(), excluded), ModelError);
}

TEST(LogLikelihoodTest, ParameterCountMismatchThrows) {
  EXPECT_THROW(log_likelihood(triples_round_robin(), ModelParams::neutral(3, 3)),
               ModelError);
}

TEST(LogLikelihoodProperty, AgreesWithBruteForce) {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 50; ++trial) {
    const Dataset data = testing::random_dataset(rng, 6, 12, 5, 3);
    const ModelParams params = random_params(rng, 6, 3);
    ASSERT_NEAR(log_likelihood(data, params),
                oracle::brute_force_log_likelihood(data, params), 1e-10);
  }
}

TEST(ScoreTest, SymmetricDataAtSymmetricParamsIsZero) {
  // Every outcome of {A, B, C} observed once.
  Dataset data;
  data.items = {"A", "B", "C"};
  for (const ItemSet& w : std::vector<ItemSet>{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}}) {
    data.contests.push_back(make_contest({0, 1, 2}, w));
  }
  ModelParams params = ModelParams::neutral(3, 3);
  // Symmetric in items; gammas set so expected tie counts match (3 pairs, 1 triple of 7).
  params.log_tie_prevalence = {0.0, 0.0};
  const Eigen::VectorXd g = score(data, params);
  EXPECT_LT(g.lpNorm<Eigen::Infinity>(), 1e-13);
}

TEST(ScoreTest, VanishesAtFittedEstimate) {
  const FitReport report = fit(triples_round_robin());
  EXPECT_LT(score(triples_round_robin(), report.params).norm(), 1e-4);
}

TEST(ScoreProperty, MatchesFiniteDifferencesAtRandomPoints) {
  std::mt19937_64 rng(19);
  const Dataset data = triples_round_robin();
  for (int trial = 0; trial < 100; ++trial) {
    ModelParams params = random_params(rng, 4, 3);
    params.normalize();
    const ParameterLayout layout = make_layout(params);
    const Eigen::VectorXd analytic = score(data, params);
    const Eigen::VectorXd numeric = oracle::numeric_gradient(data, params, layout, 1e-6);
    const double rel = (analytic - numeric).lpNorm<Eigen::Infinity>() /
                       analytic.lpNorm<Eigen::Infinity>();
    ASSERT_LT(rel, 1e-6) << "trial " << trial;
  }
}

TEST(ScoreProperty, EqualsObservedMinusExpectedSufficientStatistics) {
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 50; ++trial) {
    const Dataset data = testing::random_dataset(rng, 4, 10, 4, 4);
    const ModelParams params = random_params(rng, 4, 4);
    const ParameterLayout layout = make_layout(params);
    const Eigen::VectorXd expected =
        oracle::observed_design_total(data, params, layout) -
        oracle::design_moments(data, params, layout).mean;
    ASSERT_LT((score(data, params) - expected).lpNorm<Eigen::Infinity>(), 1e-12);
  }
}

TEST(FisherInformationTest, EqualPairWithoutTiesIsBernoulliVariance) {
  Dataset data;
  data.items = {"i", "j"};
  data.contests = {make_contest({0, 1}, {0})};
  const Eigen::MatrixXd info = fisher_information(data, ModelParams::neutral(2, 1));
  ASSERT_EQ(info.rows(), 1);
  EXPECT_NEAR(info(0, 0), 0.25, 1e-15);
}

TEST(FisherInformationProperty, MatchesEnumeratedCovariance) {
  std::mt19937_64 rng(21);
  const Dataset triples = triples_round_robin();
  for (int trial = 0; trial < 50; ++trial) {
    const Dataset data = trial == 0 ? triples : testing::random_dataset(rng, 4, 8, 4, 3);
    const ModelParams params = random_params(rng, 4, 3);
    const ParameterLayout layout = make_layout(params);
    const Eigen::MatrixXd info = fisher_information(data, params);
    const Eigen::MatrixXd oracle_cov = oracle::design_moments(data, params, layout).covariance;
    ASSERT_LT((info - oracle_cov).lpNorm<Eigen::Infinity>(), 1e-12);
    ASSERT_LT((info - info.transpose()).lpNorm<Eigen::Infinity>(), 1e-15);
    for (int k = 0; k < info.rows(); ++k) ASSERT_GE(info(k, k), 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(info);
    ASSERT_GE(eig.eigenvalues().minCoeff(), -1e-12);
  }
}

TEST(SufficientStatisticsTest, TriplesRoundRobin) {
  const SufficientStatistics stats = sufficient_statistics(triples_round_robin());
  const std::vector<double> expected = {5.0 / 6, 11.0 / 6, 5.0 / 6, 3.0 / 6};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(stats.item_scores[i], expected[i], 1e-15);
  EXPECT_EQ(stats.ties_of_order(2), 2);
  EXPECT_EQ(stats.ties_of_order(3), 1);
  EXPECT_NEAR(std::accumulate(stats.item_scores.begin(), stats.item_scores.end(), 0.0),
              4.0, 1e-14);
}

TEST(SufficientStatisticsTest, NoTiesGivesIntegerWins) {
  Dataset data;
  data.items = {"A", "B", "C"};
  data.contests = {make_contest({0, 1}, {0}), make_contest({0, 2}, {0}),
                   make_contest({1, 2}, {2})};
  const SufficientStatistics stats = sufficient_statistics(data);
  EXPECT_EQ(stats.item_scores, (std::vector<double>{2.0, 0.0, 1.0}));
  for (int t = 2; t < 5; ++t) EXPECT_EQ(stats.ties_of_order(t), 0);
}

TEST(ParameterLayoutTest, PackUnpackAndNames) {
  ModelParams params = golden_params();
  const ParameterLayout layout = make_layout(params);
  ASSERT_EQ(layout.size(), 5);
  const std::vector<std::string> items = {"A", "B", "C", "D"};
  EXPECT_EQ(layout.name(0, items), "A");
  EXPECT_EQ(layout.name(3, items), "delta2");
  EXPECT_EQ(layout.name(4, items), "delta3");
  Eigen::VectorXd theta = pack(params, layout);
  theta[1] = 1.5;
  unpack(theta, layout, params);
  EXPECT_EQ(params.log_strength[1], 1.5);
  EXPECT_EQ(make_layout(params, /*fixed_strengths=*/true).size(), 2);
}

}  // namespace
}  // namespace dluce
