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

#ifndef POLYFAIR_TESTS_FIXTURES_HPP_
#define POLYFAIR_TESTS_FIXTURES_HPP_

#include <vector>

#include "polyfair/setfn.hpp"

namespace fixture {

// Values in bit order: {}, {1}, {2}, {1,2}, {3}, {1,3}, {2,3}, {1,2,3}.
inline polyfair::RankOracle F2() {
  return polyfair::TabularRank(polyfair::GroundSet(2), {0.0, 1.0, 2.0, 2.5}).oracle();
}

inline polyfair::RankOracle F3() {
  return polyfair::TabularRank(polyfair::GroundSet(3),
                               {0.0, 1.0, 2.0, 3.0, 0.5, 2.3, 2.3, 3.3})
      .oracle();
}

// F3 with f({1}) = f({2}) = 2 and f({1,2}) = 3.2: a rank function with the
// same fair point.
inline polyfair::RankOracle F3v() {
  return polyfair::TabularRank(polyfair::GroundSet(3),
                               {0.0, 2.0, 2.0, 3.2, 0.5, 2.3, 2.3, 3.3})
      .oracle();
}

inline polyfair::RankOracle modular(std::vector<double> c) {
  return polyfair::modular_table(c).oracle();
}

}  // namespace fixture

#endif  // POLYFAIR_TESTS_FIXTURES_HPP_
