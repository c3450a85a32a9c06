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

#include "onebit/lp.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "onebit/errors.h"

namespace onebit {

LinearProgram::LinearProgram(int n)
    : n_vars(n), objective(n, 0.0), lower(n, 0.0), upper(n, kInfinity) {}

void LinearProgram::AddRow(std::vector<double> coeffs, Relation rel,
                           double rhs) {
  rows.push_back({std::move(coeffs), rel, rhs});
}

const char* LpStatusName(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kNonConvergence:
      return "non-convergence";
  }
  return "?";
}

double MaxViolation(const LinearProgram& lp, const std::vector<double>& v) {
  double worst = 0.0;
  for (int j = 0; j < lp.n_vars; ++j) {
    worst = std::max(worst, lp.lower[j] - v[j]);
    worst = std::max(worst, v[j] - lp.upper[j]);
  }
  for (const LpRow& row : lp.rows) {
    double lhs = 0.0;
    for (int j = 0; j < lp.n_vars; ++j) lhs += row.coeffs[j] * v[j];
    switch (row.rel) {
      case Relation::kLessEqual:
        worst = std::max(worst, lhs - row.rhs);
        break;
      case Relation::kGreaterEqual:
        worst = std::max(worst, row.rhs - lhs);
        break;
      case Relation::kEqual:
        worst = std::max(worst, std::abs(lhs - row.rhs));
        break;
    }
  }
  return worst;
}

namespace {

void Validate(const LinearProgram& lp) {
  if (lp.n_vars < 0) throw DimensionError("LP: negative variable count");
  const auto n = static_cast<std::size_t>(lp.n_vars);
  if (lp.objective.size() != n || lp.lower.size() != n || lp.upper.size() != n) {
    throw DimensionError("LP: objective/bounds length must equal n_vars");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(lp.objective[j])) {
      throw ParameterError("LP: objective coefficients must be finite");
    }
    if (std::isnan(lp.lower[j]) || std::isnan(lp.upper[j]) ||
        lp.lower[j] > lp.upper[j] || lp.lower[j] == kInfinity ||
        lp.upper[j] == -kInfinity) {
      throw ParameterError("LP: invalid bounds for variable " +
                           std::to_string(j));
    }
  }
  for (const LpRow& row : lp.rows) {
    if (row.coeffs.size() != n) {
      throw DimensionError("LP: row length must equal n_vars");
    }
    if (!std::isfinite(row.rhs)) throw ParameterError("LP: rhs must be finite");
    for (double a : row.coeffs) {
      if (!std::isfinite(a)) throw ParameterError("LP: non-finite coefficient");
    }
  }
}

}  // namespace

void DenseSimplex::Build(const LinearProgram& lp,
                         std::span<const double> start) {
  const int n = lp.n_vars;
  rows_ = static_cast<int>(lp.rows.size());

  map_.assign(n, {});
  int structural = 0;
  std::vector<double> col_ub;
  std::vector<char> start_upper;
  for (int j = 0; j < n; ++j) {
    ColumnMap& m = map_[j];
    const double lo = lp.lower[j];
    const double hi = lp.upper[j];
    m.plus = structural++;
    start_upper.push_back(!start.empty() && std::isfinite(lo) &&
                          std::isfinite(hi) && start[j] > 0.5 * (lo + hi));
    if (std::isfinite(lo)) {
      m.offset = lo;
      m.sign = 1.0;
      col_ub.push_back(hi - lo);
    } else if (std::isfinite(hi)) {
      m.offset = hi;
      m.sign = -1.0;
      col_ub.push_back(kInfinity);
    } else {
      m.offset = 0.0;
      m.sign = 1.0;
      col_ub.push_back(kInfinity);
      m.minus = structural++;
      col_ub.push_back(kInfinity);
      start_upper.push_back(0);
    }
  }

  int slacks = 0;
  for (const LpRow& row : lp.rows) {
    if (row.rel != Relation::kEqual) ++slacks;
  }

  // Row-local data before artificials are known.
  std::vector<std::vector<double>> dense(rows_, std::vector<double>(structural + slacks, 0.0));
  std::vector<double> rhs(rows_);
  std::vector<int> slack_col(rows_, -1);
  int next_slack = structural;
  for (int i = 0; i < rows_; ++i) {
    const LpRow& row = lp.rows[i];
    double b = row.rhs;
    for (int j = 0; j < n; ++j) {
      const double a = row.coeffs[j];
      if (a == 0.0) continue;
      const ColumnMap& m = map_[j];
      b -= a * m.offset;
      dense[i][m.plus] += a * m.sign;
      if (m.minus >= 0) dense[i][m.minus] -= a;
    }
    for (int c = 0; c < structural; ++c) {
      if (start_upper[c]) b -= dense[i][c] * col_ub[c];
    }
    if (row.rel != Relation::kEqual) {
      slack_col[i] = next_slack++;
      dense[i][slack_col[i]] = row.rel == Relation::kLessEqual ? 1.0 : -1.0;
    }
    if (b < 0.0) {
      for (double& a : dense[i]) a = -a;
      b = -b;
    }
    rhs[i] = b;
  }
  for (int s = 0; s < slacks; ++s) col_ub.push_back(kInfinity);

  std::vector<int> needs_artificial;
  for (int i = 0; i < rows_; ++i) {
    if (slack_col[i] < 0 || dense[i][slack_col[i]] < 0.0) {
      needs_artificial.push_back(i);
    }
  }
  first_artificial_ = structural + slacks;
  cols_ = first_artificial_ + static_cast<int>(needs_artificial.size());
  for (std::size_t a = 0; a < needs_artificial.size(); ++a) {
    col_ub.push_back(kInfinity);
  }

  tab_.assign(static_cast<std::size_t>(rows_) * cols_, 0.0);
  value_ = rhs;
  basis_.assign(rows_, -1);
  for (int i = 0; i < rows_; ++i) {
    std::copy(dense[i].begin(), dense[i].end(), tab_.begin() + static_cast<std::size_t>(i) * cols_);
  }
  for (int i = 0; i < rows_; ++i) {
    if (slack_col[i] >= 0 && dense[i][slack_col[i]] > 0.0) basis_[i] = slack_col[i];
  }
  for (std::size_t a = 0; a < needs_artificial.size(); ++a) {
    const int i = needs_artificial[a];
    const int col = first_artificial_ + static_cast<int>(a);
    At(i, col) = 1.0;
    basis_[i] = col;
  }
  ub_ = std::move(col_ub);
  at_upper_.assign(cols_, 0);
  for (int c = 0; c < structural; ++c) at_upper_[c] = start_upper[c];
  is_basic_.assign(cols_, 0);
  for (int b : basis_) is_basic_[b] = 1;
}

void DenseSimplex::PriceRow() {
  reduced_ = cost_;
  for (int i = 0; i < rows_; ++i) {
    const double cb = cost_[basis_[i]];
    if (cb == 0.0) continue;
    const double* row = &tab_[static_cast<std::size_t>(i) * cols_];
    for (int j = 0; j < cols_; ++j) reduced_[j] -= cb * row[j];
    mults_ += cols_;
  }
}

void DenseSimplex::Pivot(int row, int col) {
  double* prow = &tab_[static_cast<std::size_t>(row) * cols_];
  const double inv = 1.0 / prow[col];
  for (int j = 0; j < cols_; ++j) prow[j] *= inv;
  prow[col] = 1.0;
  for (int i = 0; i < rows_; ++i) {
    if (i == row) continue;
    double* r = &tab_[static_cast<std::size_t>(i) * cols_];
    const double f = r[col];
    if (f == 0.0) continue;
    for (int j = 0; j < cols_; ++j) r[j] -= f * prow[j];
    r[col] = 0.0;
    mults_ += cols_;
  }
  const double f = reduced_[col];
  if (f != 0.0) {
    for (int j = 0; j < cols_; ++j) reduced_[j] -= f * prow[j];
    reduced_[col] = 0.0;
  }
  mults_ += 2 * static_cast<std::uint64_t>(cols_);
  is_basic_[basis_[row]] = 0;
  basis_[row] = col;
  is_basic_[col] = 1;
}

DenseSimplex::PhaseResult DenseSimplex::RunPhase(int& iterations, int cap,
                                                 int bland_after) {
  for (;;) {
    if (iterations >= cap) return PhaseResult::kCapHit;
    const bool bland = iterations >= bland_after;

    int enter = -1;
    double best = 0.0;
    for (int j = 0; j < cols_; ++j) {
      if (is_basic_[j] || ub_[j] == 0.0) continue;
      const double d = reduced_[j];
      const bool eligible = at_upper_[j] ? d < -tol_.optimality : d > tol_.optimality;
      if (!eligible) continue;
      if (bland) {
        enter = j;
        break;
      }
      if (std::abs(d) > best) {
        best = std::abs(d);
        enter = j;
      }
    }
    if (enter < 0) return PhaseResult::kOptimal;

    const double dir = at_upper_[enter] ? -1.0 : 1.0;
    double theta = ub_[enter];
    int leave = -1;
    bool leave_to_upper = false;
    double leave_pivot = 0.0;
    for (int i = 0; i < rows_; ++i) {
      const double a = dir * At(i, enter);
      double limit;
      bool to_upper;
      if (a > tol_.pivot) {
        limit = std::max(value_[i], 0.0) / a;
        to_upper = false;
      } else if (a < -tol_.pivot && std::isfinite(ub_[basis_[i]])) {
        limit = std::max(ub_[basis_[i]] - value_[i], 0.0) / -a;
        to_upper = true;
      } else {
        continue;
      }
      bool take = false;
      if (limit < theta - 1e-12) {
        take = true;
      } else if (limit <= theta + 1e-12 && leave >= 0) {
        take = bland ? basis_[i] < basis_[leave] : std::abs(a) > leave_pivot;
      } else if (limit <= theta + 1e-12 && leave < 0 && !std::isfinite(theta)) {
        take = true;
      }
      if (take) {
        theta = limit;
        leave = i;
        leave_to_upper = to_upper;
        leave_pivot = std::abs(a);
      }
    }
    mults_ += rows_;
    if (!std::isfinite(theta)) return PhaseResult::kUnbounded;

    ++iterations;
    for (int i = 0; i < rows_; ++i) value_[i] -= dir * theta * At(i, enter);
    mults_ += 2 * static_cast<std::uint64_t>(rows_);
    if (leave < 0) {
      at_upper_[enter] = !at_upper_[enter];
      continue;
    }
    const double entering_value = at_upper_[enter] ? ub_[enter] - theta : theta;
    const int leaving_col = basis_[leave];
    at_upper_[leaving_col] = leave_to_upper;
    at_upper_[enter] = 0;
    value_[leave] = entering_value;
    Pivot(leave, enter);
  }
}

LpSolution DenseSimplex::Solve(const LinearProgram& lp,
                               std::span<const double> start) {
  Validate(lp);
  if (!start.empty() && static_cast<int>(start.size()) != lp.n_vars) {
    throw DimensionError("LP: start hint length must equal n_vars");
  }
  mults_ = 0;
  Build(lp, start);

  LpSolution sol;
  const int cap = 50 * (lp.n_vars + rows_ + 10);
  const int bland_after = 5 * (lp.n_vars + rows_);
  int iterations = 0;

  double rhs_scale = 1.0;
  for (double b : value_) rhs_scale = std::max(rhs_scale, std::abs(b));

  if (first_artificial_ < cols_) {
    cost_.assign(cols_, 0.0);
    for (int j = first_artificial_; j < cols_; ++j) cost_[j] = -1.0;
    PriceRow();
    const PhaseResult r = RunPhase(iterations, cap, bland_after);
    if (r == PhaseResult::kCapHit) {
      sol.status = LpStatus::kNonConvergence;
      sol.iterations = iterations;
      sol.mult_count = mults_;
      return sol;
    }
    double infeasibility = 0.0;
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] >= first_artificial_) infeasibility += std::max(value_[i], 0.0);
    }
    for (int j = first_artificial_; j < cols_; ++j) {
      if (!is_basic_[j] && at_upper_[j]) infeasibility += ub_[j];
    }
    if (infeasibility > tol_.feasibility * rhs_scale) {
      sol.status = LpStatus::kInfeasible;
      sol.iterations = iterations;
      sol.mult_count = mults_;
      return sol;
    }
    for (int j = first_artificial_; j < cols_; ++j) {
      ub_[j] = 0.0;
      at_upper_[j] = 0;
    }
  }

  cost_.assign(cols_, 0.0);
  for (int j = 0; j < lp.n_vars; ++j) {
    const ColumnMap& m = map_[j];
    cost_[m.plus] = lp.objective[j] * m.sign;
    if (m.minus >= 0) cost_[m.minus] = -lp.objective[j];
  }
  PriceRow();
  const PhaseResult r = RunPhase(iterations, cap, bland_after);
  sol.iterations = iterations;
  if (r == PhaseResult::kCapHit) {
    sol.status = LpStatus::kNonConvergence;
    sol.mult_count = mults_;
    return sol;
  }
  if (r == PhaseResult::kUnbounded) {
    sol.status = LpStatus::kUnbounded;
    sol.mult_count = mults_;
    return sol;
  }

  std::vector<double> w(cols_, 0.0);
  for (int j = 0; j < cols_; ++j) {
    if (!is_basic_[j] && at_upper_[j]) w[j] = ub_[j];
  }
  for (int i = 0; i < rows_; ++i) w[basis_[i]] = value_[i];

  sol.v.resize(lp.n_vars);
  sol.objective_value = 0.0;
  for (int j = 0; j < lp.n_vars; ++j) {
    const ColumnMap& m = map_[j];
    double v = m.offset + m.sign * w[m.plus];
    if (m.minus >= 0) v -= w[m.minus];
    v = std::clamp(v, lp.lower[j], lp.upper[j]);
    sol.v[j] = v;
    sol.objective_value += lp.objective[j] * v;
  }
  sol.mult_count = mults_;
  // Accumulated round-off must never surface as a wrong optimum.
  sol.status = MaxViolation(lp, sol.v) > tol_.feasibility * rhs_scale
                   ? LpStatus::kNonConvergence
                   : LpStatus::kOptimal;
  return sol;
}

LpSolution SolveLp(const LinearProgram& lp) {
  DenseSimplex solver;
  return solver.Solve(lp);
}

}  // namespace onebit
