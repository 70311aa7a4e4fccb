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

// Polymatroid geometry: permutations, corner points and (dominant) face
// membership.

#ifndef POLYFAIR_POLYMATROID_HPP_
#define POLYFAIR_POLYMATROID_HPP_

#include <optional>
#include <span>
#include <vector>

#include "polyfair/setfn.hpp"

namespace polyfair {

// A bijection on {1..a}, stored as the sequence pi(1), ..., pi(a).
class Permutation {
 public:
  explicit Permutation(std::vector<int> order);
  static Permutation identity(int size);

  int size() const noexcept { return static_cast<int>(order_.size()); }
  int operator[](int position) const { return order_[position]; }  // 0-based
  const std::vector<int>& order() const noexcept { return order_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> order_;
};

// Rates indexed by element label - 1.
using RateVector = std::vector<double>;

struct CornerPoint {
  Permutation perm;
  RateVector rates;
};

inline constexpr double kDefaultGeometryTol = 1e-9;

// v_{pi(1)} = f({pi(1)}), v_{pi(i)} = f({pi(1..i)}) - f({pi(1..i-1)}).
CornerPoint corner_point(const RankOracle& f, const Permutation& perm);

// Sum of x over the elements of s.
double subset_sum(std::span<const double> x, SubsetMask s);

struct MembershipReport {
  bool inside = false;
  bool negative_coordinate = false;
  // Subset with the smallest slack f(S) - x(S) (the most violated or the
  // tightest constraint), ties by tie_break_less.
  SubsetMask tightest;
  double min_slack = 0.0;
  double tolerance = 0.0;  // absolute tolerance actually applied
};

// Exhaustive scan of x(S) <= f(S) + tol over all nonempty S; `tol` is scaled
// by max(1, f(E)).
MembershipReport check_membership(const RankOracle& f, std::span<const double> x,
                                  double tol = kDefaultGeometryTol);
bool membership(const RankOracle& f, std::span<const double> x,
                double tol = kDefaultGeometryTol);
bool on_face(const RankOracle& f, std::span<const double> x,
             double tol = kDefaultGeometryTol);

double scaled_tolerance(const RankOracle& f, double tol);

}  // namespace polyfair

#endif  // POLYFAIR_POLYMATROID_HPP_
