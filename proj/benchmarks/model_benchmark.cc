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


#include <benchmark/benchmark.h>

#include <cmath>

#include "dluce/estimation.hpp"
#include "dluce/model.hpp"
#include "dluce/simulation.hpp"

namespace dluce {
namespace {

ModelParams graded_params(int n, int max_tie_order) {
  ModelParams params = ModelParams::neutral(n, max_tie_order);
  for (int i = 0; i < n; ++i) params.log_strength[i] = 0.1 * (i - n / 2);
  for (auto& gamma : params.log_tie_prevalence) gamma = -0.5;
  return params;
}

void BM_OutcomeDistribution(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const ModelParams params = graded_params(r, r);
  ItemSet comparison(r);
  for (int i = 0; i < r; ++i) comparison[i] = i;
  for (auto _ : state) benchmark::DoNotOptimize(outcome_distribution(comparison, params));
  state.SetComplexityN(static_cast<std::int64_t>(1) << r);
}
BENCHMARK(BM_OutcomeDistribution)->DenseRange(2, 12, 2)->Complexity(benchmark::oN);

Dataset triples_round_robin() {
  Dataset data;
  data.items = {"A", "B", "C", "D"};
  data.contests = {make_contest({1, 2, 3}, {1}), make_contest({0, 2, 3}, {0, 2}),
                   make_contest({0, 1, 3}, {1, 3}), make_contest({0, 1, 2}, {0, 1, 2})};
  return data;
}

void BM_FitTriplesRoundRobin(benchmark::State& state) {
  const Dataset data = triples_round_robin();
  for (auto _ : state) benchmark::DoNotOptimize(fit(data));
}
BENCHMARK(BM_FitTriplesRoundRobin);

void BM_FitSimulatedRoundRobin(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int r = static_cast<int>(state.range(1));
  SimConfig sim;
  sim.seed = 1;
  sim.design = round_robin_design(n, r);
  sim.replications = 20;
  sim.params = graded_params(n, r);
  const Dataset data = simulate_tournament(sim);
  for (auto _ : state) benchmark::DoNotOptimize(fit(data));
  state.counters["contests"] = data.num_contests();
}
BENCHMARK(BM_FitSimulatedRoundRobin)->Args({8, 2})->Args({8, 3})->Args({10, 4});

void BM_SimulateTournament(benchmark::State& state) {
  SimConfig sim;
  sim.seed = 2;
  sim.design = round_robin_design(4, 3);
  sim.replications = static_cast<int>(state.range(0));
  sim.params = graded_params(4, 3);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_tournament(sim));
  state.SetItemsProcessed(state.iterations() * 4 * state.range(0));
}
BENCHMARK(BM_SimulateTournament)->Arg(10000);

}  // namespace
}  // namespace dluce

BENCHMARK_MAIN();
