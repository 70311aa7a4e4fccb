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

// Time-sharing over corner points: a column-generation solver for the
// coefficients that reconstruct a point on the dominant face, and the
// block-product decomposition of the leximin point.

#ifndef POLYFAIR_TIMESHARE_HPP_
#define POLYFAIR_TIMESHARE_HPP_

#include <utility>
#include <vector>

#include "polyfair/fairness.hpp"
#include "polyfair/polymatroid.hpp"

namespace polyfair {

struct TimeShareAtom {
  Permutation perm;
  double lambda;
};

struct TimeShare {
  std::vector<TimeShareAtom> atoms;
  RateVector target;
  int iterations = 0;           // LP solves
  int corners_generated = 0;    // before pruning zero coefficients
  double reconstruction_error = 0.0;  // infinity norm
  int caratheodory_bound = 0;   // a; atoms needed at most on the face
};

inline constexpr double kReconstructionTol = 1e-9;

// Reconstruction sum_k lambda_k v(pi_k) of a time share on oracle f.
RateVector reconstruct(const RankOracle& f, const TimeShare& share);

// Coefficients of a convex combination of corner points equal to x.
// Seeded with the max-min corner; each round solves
//   max tau  s.t.  sum_i mu_i u_i - x >= tau 1,  sum_i mu_i = 1,  0 <= mu <= 1
// and, if x is not yet reproduced, adds the corner whose permutation sorts
// the residual e = x - sum mu u in descending order (ties: larger label
// first). When that corner is already present, alternative tie orders are
// tried, then the corner priced by the LP dual weights.
// Throws kTimeShareNotConverged after min(a!, 1000) corners.
TimeShare timeshare_to_point(const RankOracle& f, const RateVector& x);

// Global permutation (S^(0) first, then S^(1), ...) formed from
// per-block orders given in original labels; block_orders[j] must permute
// S^(j). Verifies that the corner coincides blockwise with the corners of
// B(f^(j), S^(j)) and throws kConvergenceFailure if round-off breaks that.
CornerPoint concat_corner(const RankOracle& f, const FairDecomposition& dec,
                          const std::vector<std::vector<int>>& block_orders);

// Corner of B(f^(j), S^(j)) for an order of S^(j) in original labels,
// returned as (original label, rate) pairs in the given order.
std::vector<std::pair<int, double>> block_corner(const FairDecomposition& dec, int j,
                                                 const std::vector<int>& order);

// Per-block time sharing for m^(j) 1 on B(f^(j), S^(j)) combined into a
// product distribution over concatenated permutations.
TimeShare decompose_fair_timeshare(const RankOracle& f, const FairDecomposition& dec);

}  // namespace polyfair

#endif  // POLYFAIR_TIMESHARE_HPP_
