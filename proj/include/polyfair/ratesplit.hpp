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

// Rate-splitting decode schedules for the leximin point. Blocks are decoded
// from S^(t) down to S^(0); for a scalar Gaussian MAC the within-block split
// powers are computed as well.

#ifndef POLYFAIR_RATESPLIT_HPP_
#define POLYFAIR_RATESPLIT_HPP_

#include <optional>
#include <vector>

#include "polyfair/channels.hpp"
#include "polyfair/fairness.hpp"

namespace polyfair {

struct VirtualUser {
  int real_user = 0;
  std::optional<double> split_snr;  // absent for structure-only schedules
  double achieved_rate = 0.0;       // in the decomposition's log base
};

struct BlockSchedule {
  int block = 0;                     // j of S^(j)
  std::vector<VirtualUser> stages;   // in decode order
};

struct SplitSchedule {
  std::vector<BlockSchedule> blocks;  // j = t, t-1, ..., 0
  LogBase base = LogBase::kNatural;
};

inline constexpr double kSplitRateTol = 1e-8;

// With `mac`, every block is realised by successive decoding of at most
// 2|S^(j)| - 1 virtual users (at most two per real user) that see the
// not-yet-decoded virtual users of the block plus all lower blocks as noise.
// Throws kSplitInfeasible if the decomposition does not belong to `mac`.
SplitSchedule ratesplit_schedule(const FairDecomposition& dec,
                                 const std::optional<GaussianMacParams>& mac);

}  // namespace polyfair

#endif  // POLYFAIR_RATESPLIT_HPP_
