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
#include <thread>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "polyfair/instances.hpp"
#include "polyfair/setfn.hpp"

using namespace polyfair;

TEST_CASE("subset masks use 1-based labels") {
  const SubsetMask s = SubsetMask::of({1, 3});
  CHECK(s.bits() == 0b101u);
  CHECK(s.cardinality() == 2);
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(2));
  CHECK(s.to_string() == "{1,3}");
  CHECK(s.with(2).bits() == 0b111u);
  CHECK(s.without(1) == SubsetMask::of({3}));
  CHECK(tie_break_less(SubsetMask::of({3}), SubsetMask::of({1, 2})));
  CHECK(tie_break_less(SubsetMask::of({1, 3}), SubsetMask::of({2, 3})));
}

TEST_CASE("ground set size guard") {
  CHECK_THROWS_AS(GroundSet(0), Error);
  CHECK_THROWS_AS(GroundSet(kMaxGroundSize + 1), Error);
  CHECK(GroundSet(kMaxGroundSize).size() == kMaxGroundSize);
}

TEST_CASE("eval on tables") {
  const RankOracle f2 = fixture::F2();
  CHECK(eval(f2, SubsetMask::of({2})) == 2.0);
  CHECK(eval(f2, SubsetMask()) == 0.0);
  CHECK(eval(fixture::modular({1, 2, 3}), SubsetMask::of({1, 3})) == 4.0);
  try {
    eval(f2, SubsetMask::of({3}));
    FAIL("expected InvalidSubset");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidSubset);
  }
}

TEST_CASE("tabular input checks") {
  CHECK_THROWS_AS(TabularRank(GroundSet(2), {0.0, 1.0, 2.0}), Error);
  CHECK_THROWS_AS(TabularRank(GroundSet(2), {0.5, 1.0, 2.0, 2.5}), Error);
  CHECK_THROWS_AS(TabularRank(GroundSet(2), {0.0, NAN, 2.0, 2.5}), Error);
}

TEST_CASE("validate_rank on small tables") {
  const ValidationReport ok = validate_rank(fixture::F2());
  CHECK(ok.ok());
  CHECK_FALSE(ok.witness.has_value());

  const RankOracle bad = TabularRank(GroundSet(2), {0.0, 1.0, 2.0, 3.5}).oracle();
  const ValidationReport r = validate_rank(bad);
  CHECK_FALSE(r.submodular_ok);
  CHECK(r.monotone_ok);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->axiom == Axiom::kSubmodular);
  CHECK(r.witness->first == SubsetMask::of({1}));
  CHECK(r.witness->second == SubsetMask::of({2}));
}

TEST_CASE("the three-element golden table is not submodular") {
  // f({1}) + f({3}) = 1.5 < f({1,3}) = 2.3
  const ValidationReport r = validate_rank(fixture::F3());
  CHECK_FALSE(r.submodular_ok);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->first == SubsetMask::of({1}));
  CHECK(r.witness->second == SubsetMask::of({3}));
  CHECK(validate_rank(fixture::F3v()).ok());
}

TEST_CASE("validate_rank flags monotonicity") {
  // f(∅) is pinned to 0 by every oracle, so normalization always holds here.
  const RankOracle dip(GroundSet(2), [](SubsetMask s) { return s.bits() == 3 ? 0.5 : 1.0; });
  const ValidationReport r = validate_rank(dip);
  CHECK_FALSE(r.monotone_ok);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->axiom == Axiom::kMonotone);
  CHECK(r.witness->first.is_subset_of(r.witness->second));
  CHECK(dip(r.witness->first) > dip(r.witness->second));
  CHECK(r.normalized_ok);
}

TEST_CASE("validate_rank tolerance is relative") {
  const RankOracle f = fixture::F2().scaled(1e6);
  CHECK(validate_rank(f).ok());
  CHECK(validate_rank(f).tolerance == doctest::Approx(1e-9 * 2.5e6));
}

TEST_CASE("contraction values") {
  const RankOracle h = contract(fixture::F3(), SubsetMask::of({3}));
  CHECK(h.size() == 2);
  CHECK(h.labels() == std::vector<int>{1, 2});
  CHECK(h(SubsetMask::of({1})) == doctest::Approx(1.8).epsilon(1e-15));
  CHECK(h(SubsetMask::of({1, 2})) == doctest::Approx(2.8).epsilon(1e-15));
  CHECK(h.localize({2}) == SubsetMask::of({2}));

  const RankOracle same = contract(fixture::F3(), SubsetMask());
  for (std::uint32_t b = 0; b < 8; ++b) CHECK(same(SubsetMask(b)) == fixture::F3()(SubsetMask(b)));

  try {
    contract(fixture::F3(), SubsetMask::of({1, 2, 3}));
    FAIL("expected EmptyGround");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyGround);
  }
}

TEST_CASE("contraction keeps original labels through a chain") {
  const RankOracle h1 = contract(fixture::modular({1, 2, 3, 4}), SubsetMask::of({2}));
  const RankOracle h2 = contract(h1, SubsetMask::of({2}));  // local 2 = original 3
  CHECK(h2.labels() == std::vector<int>{1, 4});
  CHECK(h2(SubsetMask::of({2})) == 4.0);
}

TEST_CASE("contraction preserves the rank axioms") {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 5;
    const RankOracle f = random_submodular_table(n, rng).oracle();
    REQUIRE(validate_rank(f).ok());
    for (std::uint32_t a = 1; a + 1 < (1u << n); a += 3) {
      CHECK(validate_rank(contract(f, SubsetMask(a))).ok());
    }
  }
}

TEST_CASE("sfm_bruteforce") {
  const RankOracle f3 = fixture::F3();
  const Minimizer m = sfm_bruteforce(
      {GroundSet(3), [&](SubsetMask s) { return f3(s) - 1.1 * s.cardinality(); }}, true);
  CHECK(m.set == SubsetMask::of({3}));
  CHECK(m.value == doctest::Approx(-0.6));

  const SetFunction zero{GroundSet(3), [](SubsetMask) { return 0.0; }};
  CHECK(sfm_bruteforce(zero, false).set == SubsetMask());
  CHECK(sfm_bruteforce(zero, true).set == SubsetMask::of({1}));

  const SetFunction card{GroundSet(4), [](SubsetMask s) { return double(s.cardinality()); }};
  const Minimizer c = sfm_bruteforce(card, true);
  CHECK(c.set == SubsetMask::of({1}));
  CHECK(c.value == 1.0);
}

TEST_CASE("log bases") {
  CHECK(parse_log_base("e") == LogBase::kNatural);
  CHECK(parse_log_base("2") == LogBase::kBinary);
  CHECK_THROWS_AS(parse_log_base("10"), Error);
  CHECK(in_base(std::log(8.0), LogBase::kBinary) == doctest::Approx(3.0));
  CHECK(to_nats(3.0, LogBase::kBinary) == doctest::Approx(std::log(8.0)));
}

TEST_CASE("memoized oracle is safe under concurrent reads") {
  const RankOracle f(GroundSet(8), [](SubsetMask s) {
    return std::sqrt(double(s.cardinality()));
  });
  std::vector<double> a(256), b(256);
  std::thread t1([&] { for (std::uint32_t s = 0; s < 256; ++s) a[s] = f(SubsetMask(s)); });
  std::thread t2([&] { for (std::uint32_t s = 0; s < 256; ++s) b[s] = f(SubsetMask(s)); });
  t1.join();
  t2.join();
  CHECK(a == b);
  CHECK(a[255] == std::sqrt(8.0));
}
