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

#include "polyfair/setfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>

namespace polyfair {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidSubset: return "InvalidSubset";
    case ErrorCode::kSizeLimit: return "SizeLimit";
    case ErrorCode::kEmptyGround: return "EmptyGround";
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kInvalidPermutation: return "InvalidPermutation";
    case ErrorCode::kConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::kTimeShareNotConverged: return "TimeShareNotConverged";
    case ErrorCode::kSplitInfeasible: return "SplitInfeasible";
    case ErrorCode::kSchema: return "Schema";
  }
  return "Unknown";
}

GroundSet::GroundSet(int size) : size_(size) {
  if (size < 1 || size > kMaxGroundSize) {
    throw Error(ErrorCode::kSizeLimit,
                "ground set size " + std::to_string(size) +
                    " outside [1, " + std::to_string(kMaxGroundSize) + "]");
  }
}

SubsetMask SubsetMask::of(std::initializer_list<int> labels) {
  return of(std::span<const int>(labels.begin(), labels.size()));
}

SubsetMask SubsetMask::of(std::span<const int> labels) {
  std::uint32_t bits = 0;
  for (int label : labels) {
    if (label < 1 || label > kMaxGroundSize) {
      throw Error(ErrorCode::kInvalidSubset,
                  "element label " + std::to_string(label) + " out of range");
    }
    bits |= 1u << (label - 1);
  }
  return SubsetMask(bits);
}

std::vector<int> SubsetMask::labels() const {
  std::vector<int> out;
  out.reserve(cardinality());
  for (std::uint32_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(std::countr_zero(b) + 1);
  }
  return out;
}

std::string SubsetMask::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int label : labels()) {
    if (!first) os << ',';
    os << label;
    first = false;
  }
  os << '}';
  return os.str();
}

const char* to_string(LogBase base) {
  return base == LogBase::kBinary ? "2" : "e";
}

LogBase parse_log_base(const std::string& text) {
  if (text == "e") return LogBase::kNatural;
  if (text == "2") return LogBase::kBinary;
  throw Error(ErrorCode::kInvalidParameter,
              "log base must be \"e\" or \"2\", got \"" + text + "\"");
}

double in_base(double nats, LogBase base) {
  return base == LogBase::kBinary ? nats / std::numbers::ln2 : nats;
}

double to_nats(double value, LogBase base) {
  return base == LogBase::kBinary ? value * std::numbers::ln2 : value;
}

struct RankOracle::State {
  Evaluator evaluator;
  bool memoize;
  std::mutex mu;
  std::vector<double> cache;  // NaN marks "not yet evaluated"
};

RankOracle::RankOracle(GroundSet ground, Evaluator evaluator, LogBase base,
                       bool memoize, std::vector<int> labels)
    : ground_(ground),
      base_(base),
      labels_(std::move(labels)),
      state_(std::make_shared<State>()) {
  if (!evaluator) {
    throw Error(ErrorCode::kInvalidParameter, "empty evaluator");
  }
  if (labels_.empty()) {
    labels_.resize(ground.size());
    for (int i = 0; i < ground.size(); ++i) labels_[i] = i + 1;
  } else if (static_cast<int>(labels_.size()) != ground.size()) {
    throw Error(ErrorCode::kInvalidParameter,
                "label metadata does not match ground size");
  }
  state_->evaluator = std::move(evaluator);
  state_->memoize = memoize;
}

double RankOracle::operator()(SubsetMask s) const {
  if (!s.fits(ground_)) {
    throw Error(ErrorCode::kInvalidSubset,
                "mask " + std::to_string(s.bits()) + " outside ground set of size " +
                    std::to_string(ground_.size()));
  }
  if (s.empty()) return 0.0;
  State& st = *state_;
  if (st.memoize) {
    std::lock_guard lock(st.mu);
    if (st.cache.empty()) {
      st.cache.assign(ground_.subset_count(),
                      std::numeric_limits<double>::quiet_NaN());
    }
    const double cached = st.cache[s.bits()];
    if (!std::isnan(cached)) return cached;
  }
  // Evaluated outside the lock; the evaluator is deterministic, so a racing
  // thread stores the same bits.
  const double value = st.evaluator(s);
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidParameter,
                "non-finite rank value at " + s.to_string());
  }
  if (st.memoize) {
    std::lock_guard lock(st.mu);
    st.cache[s.bits()] = value;
  }
  return value;
}

SubsetMask RankOracle::localize(const std::vector<int>& original_labels) const {
  std::uint32_t bits = 0;
  for (int label : original_labels) {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
      throw Error(ErrorCode::kInvalidSubset,
                  "label " + std::to_string(label) + " not in ground set");
    }
    bits |= 1u << (it - labels_.begin());
  }
  return SubsetMask(bits);
}

std::vector<int> RankOracle::original_labels(SubsetMask local) const {
  std::vector<int> out;
  for (int l : local.labels()) out.push_back(label(l));
  return out;
}

RankOracle RankOracle::scaled(double factor) const {
  if (!(factor > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "scale factor must be positive");
  }
  RankOracle base = *this;
  return RankOracle(
      ground_, [base, factor](SubsetMask s) { return factor * base(s); },
      base_, true, labels_);
}

double eval(const RankOracle& oracle, SubsetMask s) { return oracle(s); }

TabularRank::TabularRank(GroundSet ground, std::vector<double> values)
    : ground_(ground) {
  if (values.size() != ground.subset_count()) {
    throw Error(ErrorCode::kInvalidParameter,
                "table has " + std::to_string(values.size()) +
                    " entries, expected " +
                    std::to_string(ground.subset_count()));
  }
  if (values[0] != 0.0) {
    throw Error(ErrorCode::kInvalidParameter, "table value of the empty set must be 0");
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidParameter, "non-finite table value");
    }
  }
  values_ = std::make_shared<const std::vector<double>>(std::move(values));
}

RankOracle TabularRank::oracle(LogBase base) const {
  auto values = values_;
  return RankOracle(
      ground_, [values](SubsetMask s) { return (*values)[s.bits()]; }, base,
      /*memoize=*/false);
}

TabularRank modular_table(std::span<const double> weights) {
  GroundSet ground(static_cast<int>(weights.size()));
  std::vector<double> values(ground.subset_count(), 0.0);
  for (std::uint32_t bits = 1; bits < ground.subset_count(); ++bits) {
    const int low = std::countr_zero(bits);
    values[bits] = values[bits & (bits - 1)] + weights[low];
  }
  return TabularRank(ground, std::move(values));
}

TabularRank tabulate(const RankOracle& oracle) {
  std::vector<double> values(oracle.ground().subset_count(), 0.0);
  for (std::uint32_t bits = 1; bits < values.size(); ++bits) {
    values[bits] = oracle(SubsetMask(bits));
  }
  return TabularRank(oracle.ground(), std::move(values));
}

const char* to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::kNormalized: return "normalized";
    case Axiom::kMonotone: return "monotone";
    case Axiom::kSubmodular: return "submodular";
  }
  return "unknown";
}

ValidationReport validate_rank(const RankOracle& oracle, double tol) {
  if (tol < 0.0) {
    throw Error(ErrorCode::kInvalidParameter, "tolerance must be nonnegative");
  }
  const int n = oracle.size();
  const std::uint32_t count = oracle.ground().subset_count();
  std::vector<double> f(count);
  double max_abs = 0.0;
  for (std::uint32_t bits = 0; bits < count; ++bits) {
    f[bits] = oracle(SubsetMask(bits));
    max_abs = std::max(max_abs, std::abs(f[bits]));
  }

  ValidationReport report;
  report.tolerance = tol * std::max(1.0, max_abs);
  const double eps = report.tolerance;

  if (std::abs(f[0]) > eps) {
    report.normalized_ok = false;
    report.witness = Witness{Axiom::kNormalized, SubsetMask(), SubsetMask()};
  }

  std::optional<Witness> monotone_witness;
  std::optional<Witness> submodular_witness;
  for (std::uint32_t s = 0; s < count; ++s) {
    for (int i = 0; i < n; ++i) {
      const std::uint32_t bi = 1u << i;
      if (s & bi) continue;
      if (f[s] > f[s | bi] + eps && !monotone_witness) {
        monotone_witness = Witness{Axiom::kMonotone, SubsetMask(s), SubsetMask(s | bi)};
      }
      for (int j = i + 1; j < n; ++j) {
        const std::uint32_t bj = 1u << j;
        if (s & bj) continue;
        if (f[s | bi] + f[s | bj] < f[s | bi | bj] + f[s] - eps &&
            !submodular_witness) {
          submodular_witness =
              Witness{Axiom::kSubmodular, SubsetMask(s | bi), SubsetMask(s | bj)};
        }
      }
    }
  }
  report.monotone_ok = !monotone_witness;
  report.submodular_ok = !submodular_witness;
  if (!report.witness) {
    report.witness = monotone_witness ? monotone_witness : submodular_witness;
  }
  return report;
}

namespace {

// Positions (0-based, in the parent) of the elements not in `removed`.
std::vector<int> kept_positions(int n, SubsetMask removed) {
  std::vector<int> kept;
  for (int i = 0; i < n; ++i) {
    if (!((removed.bits() >> i) & 1u)) kept.push_back(i);
  }
  return kept;
}

std::uint32_t lift(std::uint32_t local, const std::vector<int>& positions) {
  std::uint32_t out = 0;
  for (std::uint32_t b = local; b != 0; b &= b - 1) {
    out |= 1u << positions[std::countr_zero(b)];
  }
  return out;
}

}  // namespace

RankOracle contract(const RankOracle& oracle, SubsetMask removed) {
  if (!removed.fits(oracle.ground())) {
    throw Error(ErrorCode::kInvalidSubset, "contraction set outside ground set");
  }
  if (removed == oracle.full()) {
    throw Error(ErrorCode::kEmptyGround, "cannot contract the whole ground set");
  }
  if (removed.empty()) return oracle;
  std::vector<int> positions = kept_positions(oracle.size(), removed);
  std::vector<int> labels;
  for (int p : positions) labels.push_back(oracle.labels()[p]);
  const double offset = oracle(removed);
  const std::uint32_t a = removed.bits();
  RankOracle parent = oracle;
  return RankOracle(
      GroundSet(static_cast<int>(positions.size())),
      [parent, positions, a, offset](SubsetMask s) {
        return parent(SubsetMask(lift(s.bits(), positions) | a)) - offset;
      },
      oracle.log_base(), true, std::move(labels));
}

RankOracle restrict(const RankOracle& oracle, SubsetMask kept) {
  if (!kept.fits(oracle.ground()) || kept.empty()) {
    throw Error(ErrorCode::kInvalidSubset, "restriction set must be a nonempty subset");
  }
  if (kept == oracle.full()) return oracle;
  std::vector<int> positions = kept.labels();
  for (int& p : positions) p -= 1;
  std::vector<int> labels;
  for (int p : positions) labels.push_back(oracle.labels()[p]);
  RankOracle parent = oracle;
  return RankOracle(
      GroundSet(static_cast<int>(positions.size())),
      [parent, positions](SubsetMask s) {
        return parent(SubsetMask(lift(s.bits(), positions)));
      },
      oracle.log_base(), true, std::move(labels));
}

Minimizer sfm_bruteforce(const SetFunction& g, bool exclude_empty) {
  if (!g.fn) throw Error(ErrorCode::kInvalidParameter, "empty set function");
  const std::uint32_t count = g.ground.subset_count();
  Minimizer best{SubsetMask(), std::numeric_limits<double>::infinity()};
  bool have = false;
  for (std::uint32_t bits = exclude_empty ? 1 : 0; bits < count; ++bits) {
    const SubsetMask s(bits);
    const double v = g.fn(s);
    if (std::isnan(v)) {
      throw Error(ErrorCode::kInvalidParameter, "set function returned NaN");
    }
    if (!have || v < best.value ||
        (v == best.value && tie_break_less(s, best.set))) {
      best = {s, v};
      have = true;
    }
  }
  return best;
}

}  // namespace polyfair
