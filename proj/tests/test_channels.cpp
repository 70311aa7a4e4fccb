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
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "polyfair/channels.hpp"
#include "polyfair/instances.hpp"

using namespace polyfair;

namespace {

HermitianPSD diag(std::vector<double> d) {
  ComplexMatrix m = ComplexMatrix::Zero(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return HermitianPSD(m);
}

}  // namespace

TEST_CASE("Gaussian MAC rank") {
  const RankOracle zero = gaussian_mac_rank({{0, 0, 0}});
  for (std::uint32_t b = 0; b < 8; ++b) CHECK(zero(SubsetMask(b)) == 0.0);
  CHECK(gaussian_mac_rank({{1.0}})(SubsetMask::of({1})) == doctest::Approx(std::log(2.0)));
  CHECK(gaussian_mac_rank({{1.0}}, LogBase::kBinary)(SubsetMask::of({1})) == doctest::Approx(1.0));
  const RankOracle f = gaussian_mac_rank({{3.0, 1.0}});
  CHECK(f(SubsetMask::of({1, 2})) == doctest::Approx(std::log(5.0)));
  try {
    gaussian_mac_rank({{1.0, -0.5}});
    FAIL("expected InvalidParameter");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidParameter);
  }
}

TEST_CASE("HermitianPSD acceptance") {
  ComplexMatrix skew(2, 2);
  skew << 1.0, std::complex<double>(0, 1), std::complex<double>(0, 1), 1.0;
  CHECK_THROWS_AS(HermitianPSD{skew}, Error);
  ComplexMatrix indefinite(2, 2);
  indefinite << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(HermitianPSD{indefinite}, Error);
  ComplexMatrix nearly(1, 1);
  nearly << -1e-12;
  CHECK_NOTHROW(HermitianPSD{nearly});
  ComplexMatrix rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(HermitianPSD{rect}, Error);
}

TEST_CASE("build_D") {
  const MimoParams ident{{ComplexMatrix::Identity(2, 2)}, {HermitianPSD::identity(2)}};
  CHECK(build_D(ident)[0].matrix().isApprox(ComplexMatrix::Identity(2, 2)));
  const MimoParams off{{ComplexMatrix::Identity(2, 2)}, {HermitianPSD::zero(2)}};
  CHECK(build_D(off)[0].matrix().isZero());

  Rng rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    ComplexMatrix h(2, 2), a(2, 2);
    for (int i = 0; i < 4; ++i) {
      h(i / 2, i % 2) = {g(rng), g(rng)};
      a(i / 2, i % 2) = {g(rng), g(rng)};
    }
    const HermitianPSD p(ComplexMatrix(a * a.adjoint()));
    const HermitianPSD d = build_D({{h}, {p}})[0];
    CHECK((d.matrix() - d.matrix().adjoint()).norm() < 1e-12);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(d.matrix());
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
  }
  const MimoParams bad{{ComplexMatrix::Identity(3, 2)}, {HermitianPSD::identity(2)}};
  CHECK_THROWS_AS(build_D(bad), Error);
}

TEST_CASE("log-det rank closed forms") {
  const RankOracle zero = logdet_rank({HermitianPSD::zero(2), HermitianPSD::zero(2)});
  CHECK(zero(SubsetMask::of({1, 2})) == doctest::Approx(0.0));
  CHECK(logdet_rank({HermitianPSD::identity(3)})(SubsetMask::of({1})) ==
        doctest::Approx(3 * std::log(2.0)));
  const RankOracle g = logdet_rank({diag({1, 0}), diag({0, 3})});
  CHECK(g(SubsetMask::of({1})) == doctest::Approx(std::log(2.0)));
  CHECK(g(SubsetMask::of({2})) == doctest::Approx(std::log(4.0)));
  CHECK(g(SubsetMask::of({1, 2})) == doctest::Approx(std::log(8.0)));
  CHECK_THROWS_AS(logdet_rank({HermitianPSD::identity(2), HermitianPSD::identity(3)}), Error);
}

TEST_CASE("log-det via Cholesky matches eigenvalues") {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 4, m = 1 + trial % 3;
    const std::vector<HermitianPSD> d = random_logdet(n, m, rng);
    const RankOracle g = logdet_rank(d);
    for (std::uint32_t b = 1; b < (1u << n); ++b) {
      ComplexMatrix sum = ComplexMatrix::Zero(m, m);
      for (int i = 0; i < n; ++i) {
        if ((b >> i) & 1u) sum += d[i].matrix();
      }
      const double ref = oracle::logdet_eig(sum);
      CHECK(std::abs(g(SubsetMask(b)) - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("log-det oracles are rank functions") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    CHECK(validate_rank(logdet_rank(random_logdet(1 + trial % 5, 1 + trial % 4, rng))).ok());
  }
}

TEST_CASE("dual-MAC corner rates") {
  CHECK(mac_corner_rates({HermitianPSD::identity(2)}, Permutation({1}))[0] ==
        doctest::Approx(2 * std::log(2.0)));
  const RateVector r = mac_corner_rates({diag({1, 0}), diag({0, 3})}, Permutation({2, 1}));
  CHECK(r[0] == doctest::Approx(std::log(2.0)));
  CHECK(r[1] == doctest::Approx(std::log(4.0)));

  Rng rng(29);
  const std::vector<HermitianPSD> d = random_logdet(3, 3, rng);
  const RankOracle g = logdet_rank(d);
  std::vector<int> p{1, 2, 3};
  do {
    const RateVector a = mac_corner_rates(d, Permutation(p));
    const RateVector b = corner_point(g, Permutation(p)).rates;
    for (int i = 0; i < 3; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-10);
  } while (std::next_permutation(p.begin(), p.end()));
}
