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

#include "polyfair/timeshare.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "polyfair/lp.hpp"

namespace polyfair {

namespace {

constexpr int kIterationCap = 1000;
constexpr double kPruneLambda = 1e-14;

int factorial_capped(int n, int cap) {
  long long v = 1;
  for (int i = 2; i <= n; ++i) {
    v *= i;
    if (v >= cap) return cap;
  }
  return static_cast<int>(v);
}

double infinity_norm_diff(const RateVector& a, const RateVector& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// max tau s.t. sum mu_i u_i - x >= tau, sum mu = 1, 0 <= mu <= 1.
std::vector<double> solve_master(const std::vector<RateVector>& corners, const RateVector& x) {
  const int k = static_cast<int>(corners.size());
  const int n = static_cast<int>(x.size());
  LpProblem lp;
  lp.num_vars = k + 1;  // mu_1..mu_k, tau
  lp.objective.assign(k + 1, 0.0);
  lp.objective[k] = 1.0;
  for (int e = 0; e < n; ++e) {
    std::vector<double> row(k + 1, 0.0);
    for (int i = 0; i < k; ++i) row[i] = -corners[i][e];
    row[k] = 1.0;
    lp.ub_rows.push_back(std::move(row));
    lp.ub_rhs.push_back(-x[e]);
  }
  std::vector<double> sum(k + 1, 1.0);
  sum[k] = 0.0;
  lp.eq_rows.push_back(std::move(sum));
  lp.eq_rhs.push_back(1.0);
  lp.lower.assign(k + 1, 0.0);
  lp.upper.assign(k + 1, 1.0);
  lp.lower[k] = -kInf;
  lp.upper[k] = kInf;
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kConvergenceFailure,
                std::string("time-sharing LP ended ") + to_string(sol.status));
  }
  return {sol.x.begin(), sol.x.begin() + k};
}

struct DualPrice {
  std::vector<double> weights;
  double sigma;
};

// Dual of the master LP: min sigma - w.x s.t. w.u_i <= sigma, sum w = 1, w >= 0.
DualPrice solve_dual(const std::vector<RateVector>& corners, const RateVector& x) {
  const int k = static_cast<int>(corners.size());
  const int n = static_cast<int>(x.size());
  LpProblem lp;
  lp.num_vars = n + 1;  // w_1..w_n, sigma
  lp.objective.assign(n + 1, 0.0);
  for (int e = 0; e < n; ++e) lp.objective[e] = x[e];
  lp.objective[n] = -1.0;
  for (int i = 0; i < k; ++i) {
    std::vector<double> row(n + 1, 0.0);
    for (int e = 0; e < n; ++e) row[e] = corners[i][e];
    row[n] = -1.0;
    lp.ub_rows.push_back(std::move(row));
    lp.ub_rhs.push_back(0.0);
  }
  std::vector<double> sum(n + 1, 1.0);
  sum[n] = 0.0;
  lp.eq_rows.push_back(std::move(sum));
  lp.eq_rhs.push_back(1.0);
  lp.lower.assign(n + 1, 0.0);
  lp.upper.assign(n + 1, kInf);
  lp.lower[n] = -kInf;
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kConvergenceFailure,
                std::string("time-sharing dual LP ended ") + to_string(sol.status));
  }
  return {{sol.x.begin(), sol.x.begin() + n}, sol.x[n]};
}

// Labels sorted by descending key; keys within `tie` of their predecessor
// form one group, ordered by descending label.
std::vector<std::vector<int>> descending_groups(const std::vector<double>& key, double tie) {
  std::vector<int> labels(key.size());
  std::iota(labels.begin(), labels.end(), 1);
  std::stable_sort(labels.begin(), labels.end(), [&](int a, int b) {
    if (key[a - 1] != key[b - 1]) return key[a - 1] > key[b - 1];
    return a > b;
  });
  std::vector<std::vector<int>> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i == 0 || key[labels[i - 1] - 1] - key[labels[i] - 1] > tie) groups.emplace_back();
    groups.back().push_back(labels[i]);
  }
  for (auto& g : groups) std::sort(g.begin(), g.end(), std::greater<>());
  return groups;
}

std::vector<int> flatten(const std::vector<std::vector<int>>& groups) {
  std::vector<int> out;
  for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
  return out;
}

// Advances the within-group orders like an odometer (last group fastest),
// each group through its permutations in descending-then-wrapping order.
bool next_tie_order(std::vector<std::vector<int>>& groups) {
  for (int g = static_cast<int>(groups.size()) - 1; g >= 0; --g) {
    if (std::prev_permutation(groups[g].begin(), groups[g].end())) return true;
    // prev_permutation wrapped the group back to its largest arrangement.
  }
  return false;
}

class CornerPool {
 public:
  explicit CornerPool(const RankOracle& f) : f_(f) {}

  bool contains(const std::vector<int>& order) const { return seen_.count(order) > 0; }

  void add(const std::vector<int>& order) {
    const CornerPoint c = corner_point(f_, Permutation(order));
    perms_.push_back(c.perm);
    corners_.push_back(c.rates);
    seen_.insert(order);
  }

  const std::vector<Permutation>& perms() const { return perms_; }
  const std::vector<RateVector>& corners() const { return corners_; }

 private:
  const RankOracle& f_;
  std::vector<Permutation> perms_;
  std::vector<RateVector> corners_;
  std::set<std::vector<int>> seen_;
};

double dot(const std::vector<double>& a, const RateVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Next corner to add, or an empty vector if no new improving corner exists.
std::vector<int> next_corner(const RankOracle& f, const CornerPool& pool,
                             const RateVector& x, const RateVector& residual,
                             double tie) {
  // Residual sort, then alternative orders inside tied groups.
  std::vector<std::vector<int>> groups = descending_groups(residual, tie);
  int budget = kIterationCap;
  do {
    std::vector<int> order = flatten(groups);
    if (!pool.contains(order)) return order;
  } while (--budget > 0 && next_tie_order(groups));

  // Pricing with the dual weights of the master LP.
  const DualPrice price = solve_dual(pool.corners(), x);
  std::vector<int> greedy = flatten(descending_groups(price.weights, 0.0));
  const double improve = price.sigma + tie;
  if (!pool.contains(greedy) &&
      dot(price.weights, corner_point(f, Permutation(greedy)).rates) > improve) {
    return greedy;
  }
  if (f.size() > kMaxPermutationEnumeration) return {};
  std::vector<int> order(f.size());
  std::iota(order.begin(), order.end(), 1);
  std::vector<int> best;
  double best_value = improve;
  do {
    if (pool.contains(order)) continue;
    const double v = dot(price.weights, corner_point(f, Permutation(order)).rates);
    if (v > best_value) {
      best_value = v;
      best = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace

RateVector reconstruct(const RankOracle& f, const TimeShare& share) {
  RateVector out(f.size(), 0.0);
  for (const auto& atom : share.atoms) {
    const RateVector v = corner_point(f, atom.perm).rates;
    for (int i = 0; i < f.size(); ++i) out[i] += atom.lambda * v[i];
  }
  return out;
}

TimeShare timeshare_to_point(const RankOracle& f, const RateVector& x) {
  const int n = f.size();
  if (static_cast<int>(x.size()) != n) {
    throw Error(ErrorCode::kInvalidParameter, "target length mismatch");
  }
  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  const double sum_tol = scaled_tolerance(f, kDefaultGeometryTol);
  if (std::abs(total - f(f.full())) > sum_tol) {
    throw Error(ErrorCode::kInvalidParameter,
                "target is not on the dominant face (x(E) = " + std::to_string(total) +
                    ", f(E) = " + std::to_string(f(f.full())) + ")");
  }
  const int cap = factorial_capped(n, kIterationCap);
  const double tie = 1e-12 * std::max(1.0, std::abs(f(f.full())));

  CornerPool pool(f);
  pool.add(maxmin_corner(f).perm.order());
  TimeShare share;
  share.target = x;
  share.caratheodory_bound = n;
  std::vector<double> mu;
  for (;;) {
    ++share.iterations;
    mu = solve_master(pool.corners(), x);
    RateVector rec(n, 0.0);
    for (std::size_t i = 0; i < mu.size(); ++i) {
      for (int e = 0; e < n; ++e) rec[e] += mu[i] * pool.corners()[i][e];
    }
    if (infinity_norm_diff(rec, x) <= kReconstructionTol) break;
    if (static_cast<int>(pool.perms().size()) >= cap) {
      throw Error(ErrorCode::kTimeShareNotConverged,
                  "iteration cap " + std::to_string(cap) + " reached");
    }
    RateVector residual(n);
    for (int e = 0; e < n; ++e) residual[e] = x[e] - rec[e];
    std::vector<int> order = next_corner(f, pool, x, residual, tie);
    if (order.empty()) {
      throw Error(ErrorCode::kTimeShareNotConverged,
                  "no improving corner left after " + std::to_string(share.iterations) +
                      " rounds");
    }
    pool.add(order);
  }

  share.corners_generated = static_cast<int>(pool.perms().size());
  double kept = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] > kPruneLambda) kept += mu[i];
  }
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] > kPruneLambda) share.atoms.push_back({pool.perms()[i], mu[i] / kept});
  }
  share.reconstruction_error = infinity_norm_diff(reconstruct(f, share), x);
  return share;
}

std::vector<std::pair<int, double>> block_corner(const FairDecomposition& dec, int j,
                                                 const std::vector<int>& order) {
  const RankOracle block = dec.block_oracle(j);
  std::vector<int> local;
  for (int label : order) local.push_back(block.localize({label}).labels().front());
  const CornerPoint u = corner_point(block, Permutation(local));
  std::vector<std::pair<int, double>> out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.emplace_back(order[i], u.rates[local[i] - 1]);
  }
  return out;
}

CornerPoint concat_corner(const RankOracle& f, const FairDecomposition& dec,
                          const std::vector<std::vector<int>>& block_orders) {
  if (static_cast<int>(block_orders.size()) != dec.block_count()) {
    throw Error(ErrorCode::kInvalidPermutation, "one order per block required");
  }
  std::vector<int> global;
  for (int j = 0; j < dec.block_count(); ++j) {
    std::vector<int> sorted = block_orders[j];
    std::sort(sorted.begin(), sorted.end());
    if (sorted != dec.blocks[j].labels()) {
      throw Error(ErrorCode::kInvalidPermutation,
                  "order for block " + std::to_string(j) + " does not permute " +
                      dec.blocks[j].to_string());
    }
    global.insert(global.end(), block_orders[j].begin(), block_orders[j].end());
  }
  CornerPoint v = corner_point(f, Permutation(global));
  const double tol = scaled_tolerance(f, kDefaultGeometryTol);
  for (int j = 0; j < dec.block_count(); ++j) {
    for (auto [label, rate] : block_corner(dec, j, block_orders[j])) {
      if (std::abs(v.rates[label - 1] - rate) > tol) {
        throw Error(ErrorCode::kConvergenceFailure,
                    "blockwise corner mismatch at user " + std::to_string(label));
      }
    }
  }
  return v;
}

TimeShare decompose_fair_timeshare(const RankOracle& f, const FairDecomposition& dec) {
  struct BlockAtoms {
    std::vector<std::vector<int>> orders;  // original labels
    std::vector<double> lambdas;
  };
  std::vector<BlockAtoms> per_block;
  TimeShare share;
  share.target = dec.fair_point;
  share.caratheodory_bound = f.size();
  for (int j = 0; j < dec.block_count(); ++j) {
    const RankOracle block = dec.block_oracle(j);
    const RateVector target(block.size(), dec.levels[j]);
    const TimeShare local = timeshare_to_point(block, target);
    share.iterations += local.iterations;
    share.corners_generated += local.corners_generated;
    BlockAtoms atoms;
    for (const auto& atom : local.atoms) {
      std::vector<int> order;
      for (int l : atom.perm.order()) order.push_back(block.label(l));
      atoms.orders.push_back(std::move(order));
      atoms.lambdas.push_back(atom.lambda);
    }
    per_block.push_back(std::move(atoms));
  }

  // Odometer over (gamma_0, ..., gamma_t), gamma_t fastest.
  std::vector<std::size_t> index(per_block.size(), 0);
  for (;;) {
    std::vector<int> global;
    double lambda = 1.0;
    for (std::size_t j = 0; j < per_block.size(); ++j) {
      const auto& order = per_block[j].orders[index[j]];
      global.insert(global.end(), order.begin(), order.end());
      lambda *= per_block[j].lambdas[index[j]];
    }
    if (lambda > 0.0) share.atoms.push_back({Permutation(std::move(global)), lambda});
    int j = static_cast<int>(per_block.size()) - 1;
    while (j >= 0 && ++index[j] == per_block[j].orders.size()) {
      index[j] = 0;
      --j;
    }
    if (j < 0) break;
  }
  share.reconstruction_error = infinity_norm_diff(reconstruct(f, share), share.target);
  return share;
}

}  // namespace polyfair
