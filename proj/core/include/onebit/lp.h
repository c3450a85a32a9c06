// Copyright 2026 The onebit Authors.
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

// Dense linear programming: maximize c.v subject to row relations and
// per-variable bounds.

#ifndef ONEBIT_LP_H_
#define ONEBIT_LP_H_

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace onebit {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct LpRow {
  std::vector<double> coeffs;
  Relation rel = Relation::kLessEqual;
  double rhs = 0.0;
};

struct LinearProgram {
  int n_vars = 0;
  std::vector<double> objective;  // maximized
  std::vector<LpRow> rows;
  std::vector<double> lower;  // -kInfinity allowed
  std::vector<double> upper;  // +kInfinity allowed

  // Sizes objective/bounds for n variables; bounds default to [0, inf).
  explicit LinearProgram(int n = 0);
  void AddRow(std::vector<double> coeffs, Relation rel, double rhs);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kNonConvergence };

const char* LpStatusName(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::kNonConvergence;
  std::vector<double> v;
  double objective_value = 0.0;
  int iterations = 0;
  std::uint64_t mult_count = 0;  // real multiplications in pivots
};

// Two-phase bounded-variable primal simplex on a dense tableau.
//
// Variables are shifted/reflected onto [0, u] (free variables are split),
// inequality rows get slacks, and rows without a usable +1 slack get an
// artificial. Phase 1 maximizes minus the artificial sum; afterwards the
// artificials are clamped to zero. Pricing is Dantzig until
// 5 (n_vars + n_rows) iterations, then Bland's rule. The iteration cap is
// 50 (n_vars + n_rows + 10); hitting it yields kNonConvergence.
//
// A solver holds its tableau between calls; use one instance per thread.
class DenseSimplex {
 public:
  struct Tolerances {
    double pivot = 1e-9;
    double optimality = 1e-9;
    double feasibility = 1e-7;
  };

  DenseSimplex() = default;
  explicit DenseSimplex(Tolerances tol) : tol_(tol) {}

  // start, when non-empty, holds one value per variable: boxed variables
  // begin nonbasic at the bound nearer to it. Only the pivot path changes.
  LpSolution Solve(const LinearProgram& lp, std::span<const double> start = {});

 private:
  struct ColumnMap {
    int plus = -1;
    int minus = -1;  // only for free variables
    double offset = 0.0;
    double sign = 1.0;
  };

  enum class PhaseResult { kOptimal, kUnbounded, kCapHit };

  double& At(int r, int c) { return tab_[static_cast<std::size_t>(r) * cols_ + c]; }
  double At(int r, int c) const { return tab_[static_cast<std::size_t>(r) * cols_ + c]; }

  void Build(const LinearProgram& lp, std::span<const double> start);
  void PriceRow();
  PhaseResult RunPhase(int& iterations, int cap, int bland_after);
  void Pivot(int row, int col);

  Tolerances tol_;
  int rows_ = 0;
  int cols_ = 0;
  int first_artificial_ = 0;
  std::vector<double> tab_;      // rows_ x cols_ constraint block
  std::vector<double> reduced_;  // reduced costs, length cols_
  std::vector<double> value_;    // basic values, length rows_
  std::vector<double> ub_;       // column upper bounds
  std::vector<double> cost_;
  std::vector<int> basis_;
  std::vector<char> at_upper_;
  std::vector<char> is_basic_;
  std::vector<ColumnMap> map_;
  std::uint64_t mults_ = 0;
};

LpSolution SolveLp(const LinearProgram& lp);

// Largest violation of rows and bounds by v (0 when feasible).
double MaxViolation(const LinearProgram& lp, const std::vector<double>& v);

}  // namespace onebit

#endif  // ONEBIT_LP_H_
