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

#include "polyfair/ratesplit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>

namespace polyfair {

namespace {

constexpr double kTightTol = 1e-11;
constexpr double kFeasibleTol = 1e-9;
constexpr int kBisectionSteps = 200;

struct Piece {
  int user;
  double power;
  double target;  // nats
  bool frozen;    // already the remainder of a split
};

struct Placed {
  int user;
  double power;
};

struct Infeasible {};

double sum_power(const std::vector<Piece>& pieces, std::uint32_t bits) {
  double total = 0.0;
  for (std::uint32_t b = bits; b != 0; b &= b - 1) total += pieces[std::countr_zero(b)].power;
  return total;
}

double sum_target(const std::vector<Piece>& pieces, std::uint32_t bits) {
  double total = 0.0;
  for (std::uint32_t b = bits; b != 0; b &= b - 1) total += pieces[std::countr_zero(b)].target;
  return total;
}

// f(T) - target(T) for the Gaussian MAC with the given noise.
double slack(const std::vector<Piece>& pieces, double noise, std::uint32_t bits) {
  return std::log1p(sum_power(pieces, bits) / noise) - sum_target(pieces, bits);
}

// Minimum slack over proper nonempty subsets, optionally only those
// containing piece `must`; returns the minimising subset too.
std::pair<double, std::uint32_t> min_slack(const std::vector<Piece>& pieces, double noise,
                                           int must = -1) {
  const std::uint32_t full = (1u << pieces.size()) - 1u;
  double best = INFINITY;
  std::uint32_t arg = 0;
  for (std::uint32_t bits = 1; bits < full; ++bits) {
    if (must >= 0 && !((bits >> must) & 1u)) continue;
    const double v = slack(pieces, noise, bits);
    if (v < best) {
      best = v;
      arg = bits;
    }
  }
  return {best, arg};
}

// Splits p into (top, rest) with top + rest == p exactly in floating point.
std::pair<double, double> exact_split(double p, double rest) {
  if (rest >= p / 2) return {p - rest, rest};
  const double top = p - rest;
  return {top, p - top};
}

// Decode order (first decoded first) for pieces whose targets lie on the
// dominant face of the Gaussian MAC with `noise`.
std::vector<Placed> solve(const std::vector<Piece>& pieces, double noise) {
  const int k = static_cast<int>(pieces.size());
  if (k == 1) return {{pieces[0].user, pieces[0].power}};

  // A tight proper subset T is decoded after everything else: E - T sees it
  // as additional noise.
  const std::uint32_t full = (1u << k) - 1u;
  std::uint32_t tight = 0;
  for (std::uint32_t bits = 1; bits < full; ++bits) {
    const double v = slack(pieces, noise, bits);
    if (v < -kFeasibleTol) throw Infeasible{};
    if (v <= kTightTol &&
        (tight == 0 || tie_break_less(SubsetMask(bits), SubsetMask(tight)))) {
      tight = bits;
    }
  }
  if (tight != 0) {
    std::vector<Piece> low, high;
    for (int i = 0; i < k; ++i) ((tight >> i) & 1u ? low : high).push_back(pieces[i]);
    std::vector<Placed> out = solve(high, noise + sum_power(pieces, tight));
    std::vector<Placed> tail = solve(low, noise);
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
  }

  // No tight set: peel a top piece off one unsplit user, shrinking the
  // remainder's power until some proper subset containing it turns tight.
  std::vector<int> candidates;
  for (int i = 0; i < k; ++i) {
    if (!pieces[i].frozen) candidates.push_back(i);
  }
  std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    if (pieces[a].power != pieces[b].power) return pieces[a].power < pieces[b].power;
    return pieces[a].user < pieces[b].user;
  });
  const double total = sum_power(pieces, full);
  for (int s : candidates) {
    const double p = pieces[s].power;
    std::vector<Piece> trial = pieces;
    auto configure = [&](double rest) {
      const double top_rate = std::log((noise + total) / (noise + total - p + rest));
      trial[s].power = rest;
      trial[s].target = pieces[s].target - top_rate;
      return top_rate;
    };
    double lo = 0.0, hi = p;
    for (int step = 0; step < kBisectionSteps && hi - lo > 0.0; ++step) {
      const double mid = lo + (hi - lo) / 2;
      if (mid <= lo || mid >= hi) break;
      configure(mid);
      if (min_slack(trial, noise, s).first < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const auto [top, rest] = exact_split(p, hi);
    configure(rest);
    trial[s].frozen = true;
    try {
      std::vector<Placed> out{{pieces[s].user, top}};
      std::vector<Placed> tail = solve(trial, noise);
      out.insert(out.end(), tail.begin(), tail.end());
      return out;
    } catch (const Infeasible&) {
    }
  }
  throw Infeasible{};
}

}  // namespace

SplitSchedule ratesplit_schedule(const FairDecomposition& dec,
                                 const std::optional<GaussianMacParams>& mac) {
  if (dec.chain.empty()) throw Error(ErrorCode::kInvalidParameter, "empty decomposition");
  const RankOracle& root = dec.chain.front();
  SplitSchedule schedule;
  schedule.base = root.log_base();
  if (mac && static_cast<int>(mac->snrs.size()) != root.size()) {
    throw Error(ErrorCode::kInvalidParameter, "MAC and decomposition differ in user count");
  }

  for (int j = dec.block_count() - 1; j >= 0; --j) {
    BlockSchedule block{j, {}};
    const std::vector<int> users = dec.blocks[j].labels();
    if (!mac) {
      for (int u : users) block.stages.push_back({u, std::nullopt, dec.levels[j]});
      schedule.blocks.push_back(std::move(block));
      continue;
    }
    double noise = 1.0;
    for (int i = 0; i < j; ++i) {
      for (int u : dec.blocks[i].labels()) noise += mac->snrs[u - 1];
    }
    const double target = to_nats(dec.levels[j], schedule.base);
    std::vector<Piece> pieces;
    for (int u : users) pieces.push_back({u, mac->snrs[u - 1], target, false});
    const double face = std::log1p(sum_power(pieces, (1u << pieces.size()) - 1u) / noise);
    if (std::abs(face - target * pieces.size()) > kSplitRateTol) {
      throw Error(ErrorCode::kSplitInfeasible,
                  "block " + std::to_string(j) + " target is off the MAC's face");
    }
    std::vector<Placed> order;
    try {
      order = solve(pieces, noise);
    } catch (const Infeasible&) {
      throw Error(ErrorCode::kSplitInfeasible,
                  "block " + std::to_string(j) + " target outside the MAC region");
    }
    // Successive decoding: each stage sees everything decoded later as noise.
    std::map<int, double> per_user;
    double below = noise;
    std::vector<double> rates(order.size());
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      rates[i] = std::log1p(order[i].power / below);
      below += order[i].power;
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
      const double rate = in_base(rates[i], schedule.base);
      block.stages.push_back({order[i].user, order[i].power, rate});
      per_user[order[i].user] += rate;
    }
    for (const auto& [u, rate] : per_user) {
      if (std::abs(rate - dec.levels[j]) > kSplitRateTol) {
        throw Error(ErrorCode::kSplitInfeasible,
                    "user " + std::to_string(u) + " reaches " + std::to_string(rate) +
                        " instead of " + std::to_string(dec.levels[j]));
      }
    }
    schedule.blocks.push_back(std::move(block));
  }
  return schedule;
}

}  // namespace polyfair
