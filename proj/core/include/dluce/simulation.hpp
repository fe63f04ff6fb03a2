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

// Seeded simulation of contest outcomes and tournaments.
//
// The generator is std::mt19937_64, whose output sequence is fixed by the
// C++ standard. Uniform variates are formed from the top 53 bits of each
// draw, so a seed reproduces the same outcomes on every platform. Independent
// streams for parallel replications are seeded with
// derive_stream_seed(seed, stream), a SplitMix64 mix of the pair.

#ifndef DLUCE_SIMULATION_HPP_
#define DLUCE_SIMULATION_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dluce/types.hpp"

namespace dluce {

inline constexpr const char* kGeneratorName = "mt19937_64";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream);

// Inverse-CDF draw over enumerate_outcomes(comparison, max_tie_order()).
ItemSet sample_outcome(const ItemSet& comparison, const ModelParams& params,
                       Rng& rng);

// Every size-`subset_size` subset of {0..num_items-1}, lexicographic.
std::vector<ItemSet> round_robin_design(int num_items, int subset_size);

struct SimConfig {
  std::uint64_t seed = 0;
  std::vector<ItemSet> design;
  int replications = 1;
  ModelParams params;
  std::vector<std::string> items;  // labels; defaults to I1..In
};

// design.size() * replications contests, replication-major, each outcome
// drawn with sample_outcome from a single generator seeded with `seed`.
Dataset simulate_tournament(const SimConfig& config);

}  // namespace dluce

#endif  // DLUCE_SIMULATION_HPP_
