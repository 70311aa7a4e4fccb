// Copyright 2026 The polyfair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeded random instances for tests and the `gen` subcommand.

#ifndef POLYFAIR_INSTANCES_HPP_
#define POLYFAIR_INSTANCES_HPP_

#include <random>
#include <vector>

#include "polyfair/channels.hpp"
#include "polyfair/setfn.hpp"

namespace polyfair {

using Rng = std::mt19937_64;

// Sum of concave functions of nonnegative modular weights, so normalized,
// monotone and submodular by construction.
TabularRank random_submodular_table(int n, Rng& rng);

// D_i = H_i^H H_i with H_i a random complex r_i x m matrix, 1 <= r_i <= m.
std::vector<HermitianPSD> random_logdet(int n, int m, Rng& rng);

// A valid table with one value moved so that monotonicity or submodularity
// fails by a margin far above any validation tolerance.
TabularRank random_broken_table(int n, Rng& rng);

GaussianMacParams random_gaussian_mac(int n, Rng& rng);

}  // namespace polyfair

#endif  // POLYFAIR_INSTANCES_HPP_
