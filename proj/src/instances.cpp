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

#include "polyfair/instances.hpp"

#include <algorithm>
#include <cmath>

namespace polyfair {

namespace {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double concave(int kind, double cap, double t) {
  switch (kind) {
    case 0: return std::sqrt(t);
    case 1: return std::log1p(t);
    default: return std::min(cap, t);
  }
}

}  // namespace

TabularRank random_submodular_table(int n, Rng& rng) {
  const GroundSet ground(n);
  const int terms = uniform_int(rng, 1, 3);
  std::vector<double> values(ground.subset_count(), 0.0);
  for (int k = 0; k < terms; ++k) {
    std::vector<double> w(n);
    for (double& wi : w) wi = uniform(rng, 0.0, 2.0);
    const int kind = uniform_int(rng, 0, 2);
    const double cap = uniform(rng, 0.5, 3.0);
    for (std::uint32_t bits = 1; bits < ground.subset_count(); ++bits) {
      values[bits] += concave(kind, cap, subset_sum(w, SubsetMask(bits)));
    }
  }
  return TabularRank(ground, std::move(values));
}

std::vector<HermitianPSD> random_logdet(int n, int m, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<HermitianPSD> d;
  d.reserve(n);
  for (int i = 0; i < n; ++i) {
    const int r = uniform_int(rng, 1, m);
    ComplexMatrix h(r, m);
    for (int a = 0; a < r; ++a) {
      for (int b = 0; b < m; ++b) h(a, b) = {gauss(rng), gauss(rng)};
    }
    d.emplace_back(ComplexMatrix(h.adjoint() * h));
  }
  return d;
}

TabularRank random_broken_table(int n, Rng& rng) {
  const GroundSet ground(std::max(n, 2));
  std::vector<double> values = random_submodular_table(ground.size(), rng).values();
  const double top = values[ground.full_bits()];
  // Pick a nonempty subset; either sink it below a proper subset's value
  // (monotonicity) or lift a set of size >= 2 (submodularity).
  if (uniform_int(rng, 0, 1) == 0) {
    std::uint32_t bits = 0;
    while (std::popcount(bits) < 2) bits = static_cast<std::uint32_t>(uniform_int(rng, 3, ground.full_bits()));
    values[bits] = values[bits & (bits - 1)] - uniform(rng, 0.1, 1.0) * (1.0 + top);
    values[bits] = std::max(values[bits], -top);
  } else {
    std::uint32_t bits = 0;
    while (std::popcount(bits) < 2) bits = static_cast<std::uint32_t>(uniform_int(rng, 3, ground.full_bits()));
    values[bits] += uniform(rng, 0.5, 2.0) * (1.0 + top);
  }
  return TabularRank(ground, std::move(values));
}

GaussianMacParams random_gaussian_mac(int n, Rng& rng) {
  GaussianMacParams params;
  params.snrs.resize(n);
  for (double& p : params.snrs) p = std::exp(uniform(rng, std::log(0.1), std::log(10.0)));
  return params;
}

}  // namespace polyfair
