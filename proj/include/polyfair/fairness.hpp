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

// Fair operating points of a polymatroid: greedy max-min and min-max corner
// points, the max-min value min_S f(S)/|S| by Dinkelbach's discrete Newton
// iteration, and the recursive leximin point on the dominant face.

#ifndef POLYFAIR_FAIRNESS_HPP_
#define POLYFAIR_FAIRNESS_HPP_

#include <vector>

#include "polyfair/polymatroid.hpp"
#include "polyfair/setfn.hpp"

namespace polyfair {

// Leximin decomposition. blocks[j] and levels[j] describe S^(j) and m^(j);
// chain[j] is the contracted oracle f^(j) on E^(j) = E - S^(0) - ... - S^(j-1)
// (local labels, original labels kept as metadata).
struct FairDecomposition {
  std::vector<SubsetMask> blocks;  // masks over the original ground set
  std::vector<double> levels;
  RateVector fair_point;
  double sum_rate = 0.0;
  std::vector<RankOracle> chain;

  int block_count() const noexcept { return static_cast<int>(blocks.size()); }
  // S^(j) as a mask over chain[j]'s local labels.
  SubsetMask local_block(int j) const;
  // B(f^(j), S^(j)): chain[j] restricted to its block.
  RankOracle block_oracle(int j) const;
};

struct DinkelbachTrace {
  std::vector<double> betas;
  std::vector<SubsetMask> minimizers;
};

struct RatioMinimum {
  double value;  // min_{S != ∅} f(S)/|S|
  SubsetMask set;
};

struct DinkelbachResult {
  double beta;
  SubsetMask set;
  DinkelbachTrace trace;
};

// Greedy max-min corner: pi*(alpha) = argmin_{z not in S} f(E - S - {z}), filled from
// the last position, ties to the smallest label.
CornerPoint maxmin_corner(const RankOracle& f);

// Greedy min-max corner: pi*(alpha) = argmax_{z not in S} f(S + {z}), filled from the
// first position, ties to the smallest label. Not guaranteed optimal; see
// bruteforce_minmax_corner.
CornerPoint minmax_corner(const RankOracle& f);

inline constexpr int kMaxPermutationEnumeration = 8;

// Exhaustive reference for maxmin_corner: the corner maximising min_i v_i, first
// in lexicographic permutation order among ties. Requires a <= 8.
CornerPoint bruteforce_maxmin_corner(const RankOracle& f);
// Exhaustive corner minimising max_i v_i. Requires a <= 8.
CornerPoint bruteforce_minmax_corner(const RankOracle& f);

// Dinkelbach iteration for min f(S)/|S| starting from beta = f(E)/|E|.
DinkelbachResult min_ratio_dinkelbach(const RankOracle& f);

// Exhaustive ratio scan (ties by tie_break_less).
RatioMinimum min_ratio_exhaustive(const RankOracle& f);

// delta = min_{S != ∅} f(S)/|S| and a minimiser. Uses Dinkelbach; falls back
// to the exhaustive scan for a <= 12 if the iteration fails.
RatioMinimum maxmin_value(const RankOracle& f);

// Leximin point: repeatedly take the largest ratio minimiser as the next
// block at level m_j and contract it away.
FairDecomposition fair_point(const RankOracle& f);

inline constexpr double kRatioTieTol = 1e-10;

}  // namespace polyfair

#endif  // POLYFAIR_FAIRNESS_HPP_
