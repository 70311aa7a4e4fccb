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

#include <cmath>
#include <map>

#include "doctest.h"
#include "fixtures.hpp"
#include "polyfair/channels.hpp"
#include "polyfair/instances.hpp"
#include "polyfair/ratesplit.hpp"

using namespace polyfair;

namespace {

// Achieved rate of every stage from the split powers alone: each stage sees
// the later stages of its block and all lower blocks as noise.
std::map<int, double> decoded_rates(const BlockSchedule& b, double noise) {
  std::map<int, double> per_user;
  double below = noise;
  for (auto it = b.stages.rbegin(); it != b.stages.rend(); ++it) {
    per_user[it->real_user] += std::log1p(*it->split_snr / below);
    below += *it->split_snr;
  }
  return per_user;
}

}  // namespace

TEST_CASE("single-user blocks need no split") {
  const GaussianMacParams mac{{3.0, 1.0}};
  const FairDecomposition d = fair_point(gaussian_mac_rank(mac));
  const SplitSchedule s = ratesplit_schedule(d, mac);
  REQUIRE(s.blocks.size() == 2);
  CHECK(s.blocks[0].block == 1);
  REQUIRE(s.blocks[0].stages.size() == 1);
  CHECK(s.blocks[0].stages[0].real_user == 1);
  CHECK(*s.blocks[0].stages[0].split_snr == 3.0);
  CHECK(s.blocks[0].stages[0].achieved_rate == doctest::Approx(d.levels[1]).epsilon(1e-12));
  CHECK(s.blocks[1].stages[0].real_user == 2);
}

TEST_CASE("symmetric pair: one user straddles the other") {
  const GaussianMacParams mac{{2.0, 2.0}};
  const FairDecomposition d = fair_point(gaussian_mac_rank(mac));
  REQUIRE(d.block_count() == 1);
  const SplitSchedule s = ratesplit_schedule(d, mac);
  const auto& st = s.blocks[0].stages;
  REQUIRE(st.size() == 3);
  CHECK(st[0].real_user == st[2].real_user);
  CHECK(st[1].real_user != st[0].real_user);
  CHECK(*st[0].split_snr + *st[2].split_snr == mac.snrs[st[0].real_user - 1]);
  for (const auto& [user, rate] : decoded_rates(s.blocks[0], 1.0)) {
    CHECK(std::abs(rate - d.levels[0]) <= 1e-8);
  }
}

TEST_CASE("three equal users") {
  const GaussianMacParams mac{{1.0, 1.0, 1.0}};
  const FairDecomposition d = fair_point(gaussian_mac_rank(mac));
  const SplitSchedule s = ratesplit_schedule(d, mac);
  REQUIRE(s.blocks.size() == 1);
  CHECK(s.blocks[0].stages.size() <= 5);
  for (const auto& [user, rate] : decoded_rates(s.blocks[0], 1.0)) {
    CHECK(std::abs(rate - d.levels[0]) <= 1e-8);
  }
}

TEST_CASE("structure-only schedules") {
  const FairDecomposition d = fair_point(fixture::F3());
  const SplitSchedule s = ratesplit_schedule(d, std::nullopt);
  REQUIRE(s.blocks.size() == 2);
  CHECK(s.blocks[0].block == 1);
  REQUIRE(s.blocks[0].stages.size() == 2);
  CHECK_FALSE(s.blocks[0].stages[0].split_snr.has_value());
  CHECK(s.blocks[0].stages[1].achieved_rate == doctest::Approx(1.4));
}

TEST_CASE("mismatched decomposition and channel") {
  const FairDecomposition d = fair_point(gaussian_mac_rank({{1.0, 1.0}}));
  try {
    ratesplit_schedule(d, GaussianMacParams{{4.0, 4.0}});
    FAIL("expected SplitInfeasible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSplitInfeasible);
  }
}

TEST_CASE("base-2 decompositions") {
  const GaussianMacParams mac{{1.0, 2.0, 0.5}};
  const FairDecomposition d = fair_point(gaussian_mac_rank(mac, LogBase::kBinary));
  const SplitSchedule s = ratesplit_schedule(d, mac);
  CHECK(s.base == LogBase::kBinary);
  std::map<int, double> total;
  for (const BlockSchedule& b : s.blocks) {
    for (const VirtualUser& v : b.stages) total[v.real_user] += v.achieved_rate;
  }
  for (const auto& [user, rate] : total) {
    CHECK(rate == doctest::Approx(d.fair_point[user - 1]).epsilon(1e-8));
  }
}

TEST_CASE("random channels") {
  Rng rng(71);
  for (int trial = 0; trial < 60; ++trial) {
    const GaussianMacParams mac = random_gaussian_mac(1 + trial % 5, rng);
    const FairDecomposition d = fair_point(gaussian_mac_rank(mac));
    const SplitSchedule s = ratesplit_schedule(d, mac);
    for (const BlockSchedule& b : s.blocks) {
      double noise = 1.0;
      for (int i = 0; i < b.block; ++i) {
        for (int u : d.blocks[i].labels()) noise += mac.snrs[u - 1];
      }
      for (const auto& [user, rate] : decoded_rates(b, noise)) {
        CHECK(std::abs(rate - d.levels[b.block]) <= 1e-8);
      }
    }
  }
}
