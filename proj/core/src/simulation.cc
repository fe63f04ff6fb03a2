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

#include "dluce/simulation.hpp"

#include <map>

#include "dluce/model.hpp"
#include "dluce/outcome_space.hpp"

namespace dluce {
namespace {

ItemSet draw(const OutcomeDistribution& dist, Rng& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t last_admitted = 0;
  for (std::size_t k = 0; k < dist.outcomes.size(); ++k) {
    if (dist.probabilities[k] == 0.0) continue;
    cumulative += dist.probabilities[k];
    last_admitted = k;
    if (u < cumulative) return dist.outcomes[k];
  }
  // u landed in the rounding gap above the final cumulative sum.
  return dist.outcomes[last_admitted];
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
  // SplitMix64 finalizer applied to seed + (stream + 1) * golden gamma.
  std::uint64_t z = seed + (stream + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ItemSet sample_outcome(const ItemSet& comparison, const ModelParams& params,
                       Rng& rng) {
  return draw(outcome_distribution(comparison, params), rng);
}

std::vector<ItemSet> round_robin_design(int num_items, int subset_size) {
  if (subset_size < 2) throw ModelError("subset size must be >= 2");
  if (subset_size > num_items) {
    throw ModelError("subset size exceeds the number of items");
  }
  if (subset_size > kMaxComparisonSize) {
    throw ModelError("subset size larger than " +
                     std::to_string(kMaxComparisonSize));
  }
  ItemSet all(num_items);
  for (int i = 0; i < num_items; ++i) all[i] = i;
  std::vector<ItemSet> design;
  for (ItemSet& subset : enumerate_outcomes(all, subset_size)) {
    if (static_cast<int>(subset.size()) == subset_size) {
      design.push_back(std::move(subset));
    }
  }
  return design;
}

Dataset simulate_tournament(const SimConfig& config) {
  if (config.replications < 1) throw ModelError("replications must be >= 1");
  const int n = config.params.num_items();
  Dataset data;
  if (config.items.empty()) {
    for (int i = 0; i < n; ++i) data.items.push_back("I" + std::to_string(i + 1));
  } else {
    if (static_cast<int>(config.items.size()) != n) {
      throw ModelError("item labels do not match the parameters");
    }
    data.items = config.items;
  }

  // Distributions are computed once per distinct comparison set.
  std::vector<OutcomeDistribution> dists;
  dists.reserve(config.design.size());
  std::map<ItemSet, std::size_t> cached;
  std::vector<std::size_t> dist_of;
  for (const ItemSet& raw : config.design) {
    if (raw.size() < 2) throw ModelError("design comparison sets need 2+ items");
    const Contest probe = make_contest(raw, {raw.front()});
    for (ItemIndex i : probe.comparison) {
      if (i < 0 || i >= n) throw ModelError("design refers to an unknown item");
    }
    auto [it, inserted] = cached.try_emplace(probe.comparison, dists.size());
    if (inserted) dists.push_back(outcome_distribution(probe.comparison, config.params));
    dist_of.push_back(it->second);
  }

  Rng rng(config.seed);
  data.contests.reserve(config.design.size() * config.replications);
  for (int rep = 0; rep < config.replications; ++rep) {
    for (std::size_t d = 0; d < config.design.size(); ++d) {
      const OutcomeDistribution& dist = dists[dist_of[d]];
      data.contests.push_back(Contest{dist.comparison, draw(dist, rng)});
    }
  }
  return data;
}

}  // namespace dluce
