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

#include "polyfair/fairness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace polyfair {

SubsetMask FairDecomposition::local_block(int j) const {
  return chain.at(j).localize(blocks.at(j).labels());
}

RankOracle FairDecomposition::block_oracle(int j) const {
  return restrict(chain.at(j), local_block(j));
}

CornerPoint maxmin_corner(const RankOracle& f) {
  const int n = f.size();
  const SubsetMask full = f.full();
  std::vector<int> order(n);
  SubsetMask placed;
  for (int alpha = n; alpha >= 1; --alpha) {
    int best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (int z = 1; z <= n; ++z) {
      if (placed.contains(z)) continue;
      const double v = f(full.minus(placed).without(z));
      if (best == 0 || v < best_value) {
        best = z;
        best_value = v;
      }
    }
    order[alpha - 1] = best;
    placed = placed.with(best);
  }
  return corner_point(f, Permutation(std::move(order)));
}

CornerPoint minmax_corner(const RankOracle& f) {
  const int n = f.size();
  std::vector<int> order;
  order.reserve(n);
  SubsetMask placed;
  for (int alpha = 1; alpha <= n; ++alpha) {
    int best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int z = 1; z <= n; ++z) {
      if (placed.contains(z)) continue;
      const double v = f(placed.with(z));
      if (best == 0 || v > best_value) {
        best = z;
        best_value = v;
      }
    }
    order.push_back(best);
    placed = placed.with(best);
  }
  return corner_point(f, Permutation(std::move(order)));
}

namespace {

template <typename Better>
CornerPoint enumerate_corners(const RankOracle& f, Better better) {
  if (f.size() > kMaxPermutationEnumeration) {
    throw Error(ErrorCode::kSizeLimit,
                "permutation enumeration limited to " +
                    std::to_string(kMaxPermutationEnumeration) + " elements");
  }
  std::vector<int> order(f.size());
  std::iota(order.begin(), order.end(), 1);
  CornerPoint best = corner_point(f, Permutation(order));
  while (std::next_permutation(order.begin(), order.end())) {
    CornerPoint candidate = corner_point(f, Permutation(order));
    if (better(candidate.rates, best.rates)) best = std::move(candidate);
  }
  return best;
}

double min_entry(const RateVector& v) { return *std::min_element(v.begin(), v.end()); }
double max_entry(const RateVector& v) { return *std::max_element(v.begin(), v.end()); }

}  // namespace

CornerPoint bruteforce_maxmin_corner(const RankOracle& f) {
  return enumerate_corners(f, [](const RateVector& a, const RateVector& b) {
    return min_entry(a) > min_entry(b);
  });
}

CornerPoint bruteforce_minmax_corner(const RankOracle& f) {
  return enumerate_corners(f, [](const RateVector& a, const RateVector& b) {
    return max_entry(a) < max_entry(b);
  });
}

DinkelbachResult min_ratio_dinkelbach(const RankOracle& f) {
  const int n = f.size();
  const double total = f(f.full());
  const double eps = 1e-12 * std::max(1.0, std::abs(total));
  DinkelbachResult result{total / n, f.full(), {}};
  result.trace.betas.push_back(result.beta);
  for (;;) {
    const double beta = result.beta;
    const Minimizer y = sfm_bruteforce(
        {f.ground(), [&](SubsetMask s) { return f(s) - beta * s.cardinality(); }},
        /*exclude_empty=*/true);
    result.trace.minimizers.push_back(y.set);
    result.set = y.set;
    if (y.value >= -eps) return result;
    const double next = f(y.set) / y.set.cardinality();
    if (!(next < beta)) {
      throw Error(ErrorCode::kConvergenceFailure,
                  "Dinkelbach beta did not decrease (" + std::to_string(beta) +
                      " -> " + std::to_string(next) + ")");
    }
    if (static_cast<int>(result.trace.betas.size()) >= 2 * n) {
      throw Error(ErrorCode::kConvergenceFailure,
                  "Dinkelbach exceeded 2|E| parameter updates");
    }
    result.beta = next;
    result.trace.betas.push_back(next);
  }
}

RatioMinimum min_ratio_exhaustive(const RankOracle& f) {
  RatioMinimum best{std::numeric_limits<double>::infinity(), SubsetMask()};
  for (std::uint32_t bits = 1; bits < f.ground().subset_count(); ++bits) {
    const SubsetMask s(bits);
    const double ratio = f(s) / s.cardinality();
    if (best.set.empty() || ratio < best.value ||
        (ratio == best.value && tie_break_less(s, best.set))) {
      best = {ratio, s};
    }
  }
  return best;
}

RatioMinimum maxmin_value(const RankOracle& f) {
  try {
    const DinkelbachResult r = min_ratio_dinkelbach(f);
    return {r.beta, r.set};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kConvergenceFailure || f.size() > 12) throw;
    return min_ratio_exhaustive(f);
  }
}

namespace {

// Largest S (then smallest bit pattern) with f(S) - delta|S| <= tol; for a
// rank function this is the union of all ratio minimisers.
SubsetMask maximal_ratio_minimizer(const RankOracle& f, double delta, double tol) {
  SubsetMask best;
  for (std::uint32_t bits = 1; bits < f.ground().subset_count(); ++bits) {
    const SubsetMask s(bits);
    if (f(s) - delta * s.cardinality() > tol) continue;
    if (best.empty() || s.cardinality() > best.cardinality()) best = s;
  }
  return best;
}

}  // namespace

FairDecomposition fair_point(const RankOracle& f) {
  FairDecomposition dec;
  dec.sum_rate = f(f.full());
  dec.fair_point.assign(f.size(), 0.0);
  const double tol = kRatioTieTol * std::max(1.0, std::abs(dec.sum_rate));

  RankOracle current = f;
  for (;;) {
    dec.chain.push_back(current);
    const double delta = maxmin_value(current).value;
    SubsetMask block = maximal_ratio_minimizer(current, delta, tol);
    if (block.empty()) {
      throw Error(ErrorCode::kConvergenceFailure,
                  "no subset attains the minimum ratio");
    }
    const double level = current(block) / block.cardinality();
    const std::vector<int> members = current.original_labels(block);
    for (int label : members) dec.fair_point[label - 1] = level;
    dec.blocks.push_back(SubsetMask::of(members));
    dec.levels.push_back(level);
    if (block == current.full()) break;
    current = contract(current, block);
  }
  return dec;
}

}  // namespace polyfair
