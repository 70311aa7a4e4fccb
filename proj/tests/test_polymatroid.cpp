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

#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "polyfair/instances.hpp"
#include "polyfair/polymatroid.hpp"

using namespace polyfair;

TEST_CASE("permutations must be bijections on 1..n") {
  CHECK_NOTHROW(Permutation({2, 1, 3}));
  CHECK_THROWS_AS(Permutation({1, 1}), Error);
  CHECK_THROWS_AS(Permutation({0, 1}), Error);
  CHECK_THROWS_AS(Permutation({1, 3}), Error);
  CHECK(Permutation::identity(3).order() == std::vector<int>{1, 2, 3});
}

TEST_CASE("corner points of the two-user table") {
  const RankOracle f = fixture::F2();
  CHECK(corner_point(f, Permutation({1, 2})).rates == RateVector{1.0, 1.5});
  CHECK(corner_point(f, Permutation({2, 1})).rates == RateVector{0.5, 2.0});
  try {
    corner_point(f, Permutation({1, 2, 3}));
    FAIL("expected InvalidPermutation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidPermutation);
  }
}

TEST_CASE("modular corners do not depend on the order") {
  const RankOracle f = fixture::modular({1, 2, 3});
  std::vector<int> p{1, 2, 3};
  do {
    CHECK(corner_point(f, Permutation(p)).rates == RateVector{1, 2, 3});
  } while (std::next_permutation(p.begin(), p.end()));
}

TEST_CASE("membership") {
  const RankOracle f = fixture::F2();
  CHECK(membership(f, std::vector<double>{0.0, 0.0}));
  CHECK(membership(f, std::vector<double>{1.0, 1.5}));
  CHECK_FALSE(membership(f, std::vector<double>{1.1, 1.5}));
  const MembershipReport r = check_membership(f, std::vector<double>{1.1, 1.5});
  CHECK(r.tightest == SubsetMask::of({1}));
  CHECK(r.min_slack == doctest::Approx(-0.1));
  CHECK(check_membership(f, std::vector<double>{-0.5, 0.0}).negative_coordinate);
}

TEST_CASE("dominant face") {
  CHECK_FALSE(on_face(fixture::F2(), std::vector<double>{0.0, 0.0}));
  CHECK(on_face(fixture::F2(), std::vector<double>{0.5, 2.0}));
  // x1 = 1.4 exceeds f({1}) = 1 in the golden table; the valid variant holds it.
  CHECK_FALSE(on_face(fixture::F3(), std::vector<double>{1.4, 1.4, 0.5}));
  CHECK(on_face(fixture::F3v(), std::vector<double>{1.4, 1.4, 0.5}));
}

TEST_CASE("corners and their midpoints lie on the face") {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 5;
    const RankOracle f = random_submodular_table(n, rng).oracle();
    const oracle::Table t = oracle::table_of(f);
    std::vector<int> p = oracle::identity(n);
    std::vector<RateVector> corners;
    do {
      const RateVector v = corner_point(f, Permutation(p)).rates;
      const std::vector<double> expect = oracle::corner(t, p);
      for (int i = 0; i < n; ++i) CHECK(v[i] == doctest::Approx(expect[i]).epsilon(1e-14));
      CHECK(on_face(f, v));
      corners.push_back(v);
    } while (std::next_permutation(p.begin(), p.end()));
    const RateVector& a = corners.front();
    const RateVector& b = corners.back();
    RateVector mid(n);
    for (int i = 0; i < n; ++i) mid[i] = (a[i] + b[i]) / 2;
    CHECK(on_face(f, mid));
    CHECK(oracle::inside(t, mid, 1e-9));
  }
}
