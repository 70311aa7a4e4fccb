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

// Small dense linear programs, solved by a two-phase tableau simplex with
// Bland's anti-cycling rule.

#ifndef POLYFAIR_LP_HPP_
#define POLYFAIR_LP_HPP_

#include <limits>
#include <vector>

namespace polyfair {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr int kMaxLpVariables = 200;
inline constexpr int kMaxLpRows = 400;

// maximise objective . x
// subject to  ub_rows x <= ub_rhs,  eq_rows x = eq_rhs,  lower <= x <= upper.
// Empty `lower`/`upper` mean 0 and +inf for every variable.
struct LpProblem {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<std::vector<double>> ub_rows;
  std::vector<double> ub_rhs;
  std::vector<std::vector<double>> eq_rows;
  std::vector<double> eq_rhs;
  std::vector<double> lower;
  std::vector<double> upper;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  int pivots = 0;
};

LpSolution solve_lp(const LpProblem& problem);

// Largest violation of any constraint or bound of `problem` at `x`.
double max_violation(const LpProblem& problem, const std::vector<double>& x);

}  // namespace polyfair

#endif  // POLYFAIR_LP_HPP_
