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

#include "polyfair/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polyfair/error.hpp"

namespace polyfair {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kFeasEps = 1e-9;

// x_j = offset + sum coef * y_col over nonnegative columns y.
struct VarMap {
  double offset = 0.0;
  std::vector<std::pair<int, double>> terms;
};

struct Row {
  std::vector<double> coef;  // over the nonnegative columns
  double rhs = 0.0;
  bool equality = false;
};

class Tableau {
 public:
  Tableau(int rows, int cols) : a_(rows, std::vector<double>(cols + 1, 0.0)), basis_(rows, -1) {}

  int rows() const { return static_cast<int>(a_.size()); }
  int cols() const { return static_cast<int>(a_.front().size()) - 1; }
  double& at(int r, int c) { return a_[r][c]; }
  double rhs(int r) const { return a_[r].back(); }
  double& rhs(int r) { return a_[r].back(); }
  int& basis(int r) { return basis_[r]; }

  void pivot(int r, int c) {
    std::vector<double>& pr = a_[r];
    const double p = pr[c];
    for (double& v : pr) v /= p;
    pr[c] = 1.0;
    for (int i = 0; i < rows(); ++i) {
      if (i == r) continue;
      const double factor = a_[i][c];
      if (factor == 0.0) continue;
      std::vector<double>& row = a_[i];
      for (std::size_t j = 0; j < row.size(); ++j) row[j] -= factor * pr[j];
      row[c] = 0.0;
    }
    basis_[r] = c;
    ++pivots_;
  }

  void drop_row(int r) {
    a_.erase(a_.begin() + r);
    basis_.erase(basis_.begin() + r);
  }

  // Maximises cost . z over columns with allowed[c]; Bland's rule.
  // Returns false if unbounded.
  bool optimize(const std::vector<double>& cost, const std::vector<bool>& allowed) {
    for (;;) {
      int enter = -1;
      for (int c = 0; c < cols() && enter < 0; ++c) {
        if (!allowed[c]) continue;
        double reduced = cost[c];
        for (int r = 0; r < rows(); ++r) reduced -= cost[basis_[r]] * a_[r][c];
        if (reduced > kPivotEps) enter = c;
      }
      if (enter < 0) return true;
      int leave = -1;
      double best_ratio = 0.0;
      for (int r = 0; r < rows(); ++r) {
        const double coef = a_[r][enter];
        if (coef <= kPivotEps) continue;
        const double ratio = std::max(0.0, a_[r].back()) / coef;
        if (leave < 0 || ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  double value(int c) const {
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      if (basis_[r] == c) return a_[r].back();
    }
    return 0.0;
  }

  int pivots() const { return pivots_; }

 private:
  std::vector<std::vector<double>> a_;
  std::vector<int> basis_;
  int pivots_ = 0;
};

void check_shape(const LpProblem& p) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidParameter, "LP: " + what);
  };
  if (p.num_vars < 1 || p.num_vars > kMaxLpVariables) fail("variable count out of range");
  const std::size_t rows = p.ub_rows.size() + p.eq_rows.size();
  if (rows > static_cast<std::size_t>(kMaxLpRows)) fail("too many rows");
  if (p.objective.size() != static_cast<std::size_t>(p.num_vars)) fail("objective length");
  if (p.ub_rows.size() != p.ub_rhs.size() || p.eq_rows.size() != p.eq_rhs.size()) {
    fail("row/rhs count mismatch");
  }
  for (const auto& r : p.ub_rows) {
    if (r.size() != static_cast<std::size_t>(p.num_vars)) fail("row length");
  }
  for (const auto& r : p.eq_rows) {
    if (r.size() != static_cast<std::size_t>(p.num_vars)) fail("row length");
  }
  if (!p.lower.empty() && p.lower.size() != static_cast<std::size_t>(p.num_vars)) fail("lower bounds length");
  if (!p.upper.empty() && p.upper.size() != static_cast<std::size_t>(p.num_vars)) fail("upper bounds length");
}

}  // namespace

LpSolution solve_lp(const LpProblem& problem) {
  check_shape(problem);
  const int n = problem.num_vars;
  auto lower = [&](int j) { return problem.lower.empty() ? 0.0 : problem.lower[j]; };
  auto upper = [&](int j) { return problem.upper.empty() ? kInf : problem.upper[j]; };

  // Substitute bounded/free variables by nonnegative columns.
  std::vector<VarMap> maps(n);
  std::vector<Row> rows;
  int columns = 0;
  std::vector<std::pair<int, double>> upper_rows;  // (column, bound)
  for (int j = 0; j < n; ++j) {
    const double lo = lower(j);
    const double hi = upper(j);
    if (lo > hi) return {LpStatus::kInfeasible, {}, 0.0, 0};
    if (std::isfinite(lo)) {
      maps[j] = {lo, {{columns, 1.0}}};
      if (std::isfinite(hi)) upper_rows.emplace_back(columns, hi - lo);
      ++columns;
    } else if (std::isfinite(hi)) {
      maps[j] = {hi, {{columns, -1.0}}};
      ++columns;
    } else {
      maps[j] = {0.0, {{columns, 1.0}, {columns + 1, -1.0}}};
      columns += 2;
    }
  }
  auto translate = [&](const std::vector<double>& coef, double rhs, bool eq) {
    Row row{std::vector<double>(columns, 0.0), rhs, eq};
    for (int j = 0; j < n; ++j) {
      if (coef[j] == 0.0) continue;
      row.rhs -= coef[j] * maps[j].offset;
      for (auto [c, s] : maps[j].terms) row.coef[c] += coef[j] * s;
    }
    return row;
  };
  for (std::size_t i = 0; i < problem.ub_rows.size(); ++i) {
    rows.push_back(translate(problem.ub_rows[i], problem.ub_rhs[i], false));
  }
  for (std::size_t i = 0; i < problem.eq_rows.size(); ++i) {
    rows.push_back(translate(problem.eq_rows[i], problem.eq_rhs[i], true));
  }
  for (auto [c, bound] : upper_rows) {
    Row row{std::vector<double>(columns, 0.0), bound, false};
    row.coef[c] = 1.0;
    rows.push_back(std::move(row));
  }

  // Columns: structural | slacks (one per inequality) | artificials.
  const int m = static_cast<int>(rows.size());
  int slack_count = 0;
  for (const Row& r : rows) slack_count += r.equality ? 0 : 1;
  int artificial_count = 0;
  for (const Row& r : rows) {
    if (r.equality || r.rhs < 0.0) ++artificial_count;
  }
  const int total = columns + slack_count + artificial_count;
  if (m == 0) {
    // Only sign constraints: optimum at the offsets unless a column improves.
    LpSolution sol;
    sol.status = LpStatus::kOptimal;
    std::vector<double> cost(columns, 0.0);
    for (int j = 0; j < n; ++j) {
      for (auto [c, s] : maps[j].terms) cost[c] += problem.objective[j] * s;
    }
    for (double c : cost) {
      if (c > kPivotEps) return {LpStatus::kUnbounded, {}, 0.0, 0};
    }
    sol.x.resize(n);
    for (int j = 0; j < n; ++j) sol.x[j] = maps[j].offset;
    for (int j = 0; j < n; ++j) sol.objective += problem.objective[j] * sol.x[j];
    return sol;
  }

  Tableau t(m, total);
  int next_slack = columns;
  int next_artificial = columns + slack_count;
  for (int r = 0; r < m; ++r) {
    const Row& row = rows[r];
    const double sign = row.rhs < 0.0 ? -1.0 : 1.0;
    for (int c = 0; c < columns; ++c) t.at(r, c) = sign * row.coef[c];
    t.rhs(r) = sign * row.rhs;
    if (!row.equality) {
      t.at(r, next_slack) = sign;
      if (sign > 0.0) t.basis(r) = next_slack;
      ++next_slack;
    }
    if (t.basis(r) < 0) {
      t.at(r, next_artificial) = 1.0;
      t.basis(r) = next_artificial;
      ++next_artificial;
    }
  }

  const int first_artificial = columns + slack_count;
  std::vector<bool> allowed(total, true);
  if (artificial_count > 0) {
    std::vector<double> phase1(total, 0.0);
    for (int c = first_artificial; c < total; ++c) phase1[c] = -1.0;
    t.optimize(phase1, allowed);
    double infeasibility = 0.0;
    for (int r = 0; r < t.rows(); ++r) {
      if (t.basis(r) >= first_artificial) infeasibility += t.rhs(r);
    }
    if (infeasibility > kFeasEps) return {LpStatus::kInfeasible, {}, 0.0, t.pivots()};
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (int r = t.rows() - 1; r >= 0; --r) {
      if (t.basis(r) < first_artificial) continue;
      int col = -1;
      for (int c = 0; c < first_artificial && col < 0; ++c) {
        if (std::abs(t.at(r, c)) > kPivotEps) col = c;
      }
      if (col >= 0) {
        t.pivot(r, col);
      } else {
        t.drop_row(r);
      }
    }
    for (int c = first_artificial; c < total; ++c) allowed[c] = false;
  }

  std::vector<double> cost(total, 0.0);
  for (int j = 0; j < n; ++j) {
    for (auto [c, s] : maps[j].terms) cost[c] += problem.objective[j] * s;
  }
  LpSolution sol;
  if (!t.optimize(cost, allowed)) {
    sol.status = LpStatus::kUnbounded;
    sol.pivots = t.pivots();
    return sol;
  }
  sol.status = LpStatus::kOptimal;
  sol.pivots = t.pivots();
  sol.x.resize(n);
  for (int j = 0; j < n; ++j) {
    double v = maps[j].offset;
    for (auto [c, s] : maps[j].terms) v += s * t.value(c);
    sol.x[j] = v;
  }
  for (int j = 0; j < n; ++j) sol.objective += problem.objective[j] * sol.x[j];
  return sol;
}

double max_violation(const LpProblem& p, const std::vector<double>& x) {
  double worst = 0.0;
  auto dot = [&](const std::vector<double>& row) {
    double s = 0.0;
    for (int j = 0; j < p.num_vars; ++j) s += row[j] * x[j];
    return s;
  };
  for (std::size_t i = 0; i < p.ub_rows.size(); ++i) {
    worst = std::max(worst, dot(p.ub_rows[i]) - p.ub_rhs[i]);
  }
  for (std::size_t i = 0; i < p.eq_rows.size(); ++i) {
    worst = std::max(worst, std::abs(dot(p.eq_rows[i]) - p.eq_rhs[i]));
  }
  for (int j = 0; j < p.num_vars; ++j) {
    const double lo = p.lower.empty() ? 0.0 : p.lower[j];
    const double hi = p.upper.empty() ? kInf : p.upper[j];
    worst = std::max(worst, lo - x[j]);
    worst = std::max(worst, x[j] - hi);
  }
  return worst;
}

}  // namespace polyfair
