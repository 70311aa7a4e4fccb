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

#include "polyfair/polymatroid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace polyfair {

Permutation::Permutation(std::vector<int> order) : order_(std::move(order)) {
  const int n = size();
  if (n < 1 || n > kMaxGroundSize) {
    throw Error(ErrorCode::kInvalidPermutation,
                "permutation length " + std::to_string(n) + " out of range");
  }
  std::vector<bool> seen(n + 1, false);
  for (int label : order_) {
    if (label < 1 || label > n || seen[label]) {
      throw Error(ErrorCode::kInvalidPermutation,
                  "not a bijection on {1.." + std::to_string(n) + "}");
    }
    seen[label] = true;
  }
}

Permutation Permutation::identity(int size) {
  std::vector<int> order(size);
  std::iota(order.begin(), order.end(), 1);
  return Permutation(std::move(order));
}

CornerPoint corner_point(const RankOracle& f, const Permutation& perm) {
  if (perm.size() != f.size()) {
    throw Error(ErrorCode::kInvalidPermutation,
                "permutation of " + std::to_string(perm.size()) +
                    " elements for a ground set of " + std::to_string(f.size()));
  }
  RateVector rates(f.size(), 0.0);
  SubsetMask prefix;
  double previous = 0.0;
  for (int label : perm.order()) {
    prefix = prefix.with(label);
    const double current = f(prefix);
    rates[label - 1] = current - previous;
    previous = current;
  }
  return {perm, std::move(rates)};
}

double subset_sum(std::span<const double> x, SubsetMask s) {
  double total = 0.0;
  for (int label : s.labels()) total += x[label - 1];
  return total;
}

double scaled_tolerance(const RankOracle& f, double tol) {
  return tol * std::max(1.0, std::abs(f(f.full())));
}

MembershipReport check_membership(const RankOracle& f, std::span<const double> x,
                                  double tol) {
  if (static_cast<int>(x.size()) != f.size()) {
    throw Error(ErrorCode::kInvalidParameter, "rate vector length mismatch");
  }
  MembershipReport report;
  report.tolerance = scaled_tolerance(f, tol);
  report.min_slack = std::numeric_limits<double>::infinity();
  for (double xi : x) {
    if (xi < -report.tolerance) report.negative_coordinate = true;
  }
  const std::uint32_t count = f.ground().subset_count();
  // x(S) accumulated incrementally from the subset without its lowest bit.
  std::vector<double> sums(count, 0.0);
  for (std::uint32_t bits = 1; bits < count; ++bits) {
    const int low = std::countr_zero(bits);
    sums[bits] = sums[bits & (bits - 1)] + x[low];
    const SubsetMask s(bits);
    const double slack = f(s) - sums[bits];
    if (slack < report.min_slack ||
        (slack == report.min_slack && tie_break_less(s, report.tightest))) {
      report.min_slack = slack;
      report.tightest = s;
    }
  }
  report.inside =
      !report.negative_coordinate && report.min_slack >= -report.tolerance;
  return report;
}

bool membership(const RankOracle& f, std::span<const double> x, double tol) {
  return check_membership(f, x, tol).inside;
}

bool on_face(const RankOracle& f, std::span<const double> x, double tol) {
  const MembershipReport report = check_membership(f, x, tol);
  if (!report.inside) return false;
  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  return std::abs(total - f(f.full())) <= report.tolerance;
}

}  // namespace polyfair
