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

// Ground sets, subset masks and rank-function oracles.
//
// Elements of a ground set of size a are labelled 1..a; element i lives in
// bit i-1 of a SubsetMask. Every algorithm in the library consumes a
// RankOracle, which is an immutable, shareable handle to a set function with
// an internally synchronised memo table.

#ifndef POLYFAIR_SETFN_HPP_
#define POLYFAIR_SETFN_HPP_

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polyfair/error.hpp"

namespace polyfair {

inline constexpr int kMaxGroundSize = 20;

class GroundSet {
 public:
  explicit GroundSet(int size);

  int size() const noexcept { return size_; }
  std::uint32_t full_bits() const noexcept { return (1u << size_) - 1u; }
  std::uint32_t subset_count() const noexcept { return 1u << size_; }

  friend bool operator==(GroundSet, GroundSet) = default;

 private:
  int size_;
};

class SubsetMask {
 public:
  constexpr SubsetMask() = default;
  constexpr explicit SubsetMask(std::uint32_t bits) : bits_(bits) {}

  // Builds a mask from 1-based element labels.
  static SubsetMask of(std::initializer_list<int> labels);
  static SubsetMask of(std::span<const int> labels);
  static SubsetMask full(GroundSet ground) {
    return SubsetMask(ground.full_bits());
  }

  constexpr std::uint32_t bits() const noexcept { return bits_; }
  constexpr int cardinality() const noexcept { return std::popcount(bits_); }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr bool contains(int label) const noexcept {
    return (bits_ >> (label - 1)) & 1u;
  }
  constexpr SubsetMask with(int label) const noexcept {
    return SubsetMask(bits_ | (1u << (label - 1)));
  }
  constexpr SubsetMask without(int label) const noexcept {
    return SubsetMask(bits_ & ~(1u << (label - 1)));
  }
  constexpr bool is_subset_of(SubsetMask other) const noexcept {
    return (bits_ & ~other.bits_) == 0;
  }
  bool fits(GroundSet ground) const noexcept {
    return (bits_ & ~ground.full_bits()) == 0;
  }

  // Ascending 1-based labels.
  std::vector<int> labels() const;
  std::string to_string() const;  // "{1,3}"

  constexpr SubsetMask operator|(SubsetMask o) const noexcept {
    return SubsetMask(bits_ | o.bits_);
  }
  constexpr SubsetMask operator&(SubsetMask o) const noexcept {
    return SubsetMask(bits_ & o.bits_);
  }
  constexpr SubsetMask minus(SubsetMask o) const noexcept {
    return SubsetMask(bits_ & ~o.bits_);
  }

  friend constexpr bool operator==(SubsetMask, SubsetMask) = default;

 private:
  std::uint32_t bits_ = 0;
};

// Deterministic tie-break order used wherever a minimiser is selected:
// smaller cardinality first, then smaller bit pattern.
inline bool tie_break_less(SubsetMask a, SubsetMask b) {
  if (a.cardinality() != b.cardinality()) {
    return a.cardinality() < b.cardinality();
  }
  return a.bits() < b.bits();
}

enum class LogBase { kNatural, kBinary };

const char* to_string(LogBase base);
LogBase parse_log_base(const std::string& text);
// Natural-log value converted to the given base.
double in_base(double nats, LogBase base);
// Value in the given base converted to nats.
double to_nats(double value, LogBase base);

class RankOracle {
 public:
  using Evaluator = std::function<double(SubsetMask)>;

  // `labels` carries the original element labels of each local element;
  // empty means the identity 1..size. With `memoize` off the evaluator is
  // called on every lookup (tabular oracles are their own cache).
  RankOracle(GroundSet ground, Evaluator evaluator,
             LogBase base = LogBase::kNatural, bool memoize = true,
             std::vector<int> labels = {});

  GroundSet ground() const noexcept { return ground_; }
  int size() const noexcept { return ground_.size(); }
  LogBase log_base() const noexcept { return base_; }
  SubsetMask full() const noexcept { return SubsetMask::full(ground_); }

  // f(S); f(∅) is 0 exactly. Throws kInvalidSubset for masks outside the
  // ground set.
  double operator()(SubsetMask s) const;

  // Original label of local element `local` (1-based).
  int label(int local) const { return labels_[local - 1]; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  // Maps a mask over the original labels to a local mask. Throws if a label
  // is not part of this oracle's ground set.
  SubsetMask localize(const std::vector<int>& original_labels) const;
  std::vector<int> original_labels(SubsetMask local) const;

  // Same function, values multiplied by `factor` > 0.
  RankOracle scaled(double factor) const;

 private:
  struct State;

  GroundSet ground_;
  LogBase base_;
  std::vector<int> labels_;
  std::shared_ptr<State> state_;
};

double eval(const RankOracle& oracle, SubsetMask s);

// values[bits] = f(S) for every subset; values[0] must be 0.
class TabularRank {
 public:
  TabularRank(GroundSet ground, std::vector<double> values);

  GroundSet ground() const noexcept { return ground_; }
  const std::vector<double>& values() const noexcept { return *values_; }
  double operator[](SubsetMask s) const { return (*values_)[s.bits()]; }

  RankOracle oracle(LogBase base = LogBase::kNatural) const;

 private:
  GroundSet ground_;
  std::shared_ptr<const std::vector<double>> values_;
};

// Modular function f(S) = sum of weights[i-1] over i in S.
TabularRank modular_table(std::span<const double> weights);

// Snapshot of all 2^a values of an oracle.
TabularRank tabulate(const RankOracle& oracle);

enum class Axiom { kNormalized, kMonotone, kSubmodular };

const char* to_string(Axiom axiom);

struct Witness {
  Axiom axiom;
  SubsetMask first;   // S
  SubsetMask second;  // T
};

struct ValidationReport {
  bool normalized_ok = true;
  bool monotone_ok = true;
  bool submodular_ok = true;
  std::optional<Witness> witness;
  double tolerance = 0.0;  // absolute tolerance actually applied

  bool ok() const noexcept {
    return normalized_ok && monotone_ok && submodular_ok;
  }
};

inline constexpr double kDefaultValidationTol = 1e-9;

// Checks the three rank axioms exhaustively. `tol` is relative to
// max(1, max_S |f(S)|). Monotonicity uses single-element extensions;
// submodularity uses the local form
//   f(S+i) + f(S+j) >= f(S+i+j) + f(S),  i, j not in S,
// whose violation is reported as the pair (S+i, S+j).
ValidationReport validate_rank(const RankOracle& oracle,
                               double tol = kDefaultValidationTol);

// h(S) = f(S ∪ A) - f(A) on E - A. Remaining elements are relabelled
// 1..a-|A| in ascending order; their original labels are retained.
RankOracle contract(const RankOracle& oracle, SubsetMask removed);

// f restricted to subsets of `kept`, relabelled 1..|kept|.
RankOracle restrict(const RankOracle& oracle, SubsetMask kept);

struct SetFunction {
  GroundSet ground;
  std::function<double(SubsetMask)> fn;
};

struct Minimizer {
  SubsetMask set;
  double value;
};

// Exhaustive minimisation over all 2^a subsets with the tie_break_less rule.
Minimizer sfm_bruteforce(const SetFunction& g, bool exclude_empty);

}  // namespace polyfair

#endif  // POLYFAIR_SETFN_HPP_
