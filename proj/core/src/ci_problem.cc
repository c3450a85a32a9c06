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

#include "ci_problem.h"

#include <cmath>
#include <limits>

#include "onebit/errors.h"

namespace onebit::internal {

CiProblem::CiProblem(const PrecoderInput& in)
    : psk_(in.constellation.is_psk()) {
  const int k = static_cast<int>(in.h.rows());
  const int n = static_cast<int>(in.h.cols());
  if (psk_) {
    rows_ = BuildPskCiRows(in.h, in.symbols, in.constellation).coeffs;
    setup_mults_ = 2ULL * rows_.rows() * rows_.cols();
    return;
  }
  targets_ = QamConstraints(in.symbols, in.constellation).rows;
  spacing_ = in.constellation.level_spacing();
  const RealMatrix stacked = RealStackMatrix(in.h);
  rows_.resize(2 * k, 2 * n);
  for (int u = 0; u < k; ++u) {
    rows_.row(2 * u) = stacked.row(u);
    rows_.row(2 * u + 1) = stacked.row(k + u);
  }
}

CiProblem::Score CiProblem::Evaluate(const RealVector& x) const {
  const RealVector r = rows_ * x;
  if (psk_) return {r.minCoeff(), 1.0};
  std::vector<double> dims(r.data(), r.data() + r.size());
  const ScaledMargin best = BestReceiverScale(dims, targets_, spacing_);
  return {best.margin, best.beta};
}

RealVector CiProblem::MatchedGuess() const {
  if (psk_) return rows_.colwise().sum().transpose();
  RealVector w(rows_.rows());
  for (Eigen::Index r = 0; r < w.size(); ++r) w(r) = targets_[r].level;
  return rows_.transpose() * w;
}

CiProblem::Relaxation CiProblem::Relax(std::span<const double> fixed,
                                       Form form,
                                       DenseSimplex& solver,
                                       std::span<const double> hint) const {
  const int total = dim();
  if (static_cast<int>(fixed.size()) != total) {
    throw DimensionError("CiProblem::Relax: fixed mask length mismatch");
  }
  std::vector<int> free_idx;
  for (int i = 0; i < total; ++i) {
    if (fixed[i] == 0.0) free_idx.push_back(i);
  }
  const int nf = static_cast<int>(free_idx.size());
  const int nrows = static_cast<int>(rows_.rows());

  // Contribution of the fixed entries to each row.
  RealVector fixed_part = RealVector::Zero(nrows);
  for (int i = 0; i < total; ++i) {
    if (fixed[i] != 0.0) fixed_part += rows_.col(i) * fixed[i];
  }

  const bool margin_form = !psk_ && form == Form::kMargin;
  const int extra = margin_form ? 2 : 1;
  LinearProgram lp(nf + extra);
  for (int j = 0; j < nf; ++j) {
    lp.lower[j] = -1.0;
    lp.upper[j] = 1.0;
  }
  auto free_row = [&](int r, double scale) {
    std::vector<double> c(nf + extra, 0.0);
    for (int j = 0; j < nf; ++j) c[j] = scale * rows_(r, free_idx[j]);
    return c;
  };

  if (psk_) {
    const int t = nf;
    lp.lower[t] = -kInfinity;
    lp.objective[t] = 1.0;
    for (int r = 0; r < nrows; ++r) {
      std::vector<double> c = free_row(r, 1.0);
      c[t] = -1.0;
      lp.AddRow(std::move(c), Relation::kGreaterEqual, -fixed_part(r));
    }
  } else if (!margin_form) {
    const int t = nf;
    lp.lower[t] = -kInfinity;
    lp.objective[t] = 1.0;
    for (int r = 0; r < nrows; ++r) {
      const QamConstraint& q = targets_[r];
      if (q.cls == CoordinateClass::kInner) {
        std::vector<double> c = free_row(r, 1.0);
        c[t] = -q.level;
        lp.AddRow(std::move(c), Relation::kEqual, -fixed_part(r));
      } else {
        const double sign = q.level >= 0.0 ? 1.0 : -1.0;
        std::vector<double> c = free_row(r, sign);
        c[t] = -std::abs(q.level);
        lp.AddRow(std::move(c), Relation::kGreaterEqual, -sign * fixed_part(r));
      }
    }
  } else {
    const int beta = nf;
    const int m = nf + 1;
    lp.lower[beta] = 0.0;
    lp.lower[m] = -kInfinity;
    lp.objective[m] = 1.0;
    const double half = 0.5 * spacing_;
    for (int r = 0; r < nrows; ++r) {
      const QamConstraint& q = targets_[r];
      if (q.cls == CoordinateClass::kOuter) {
        const double sign = q.level >= 0.0 ? 1.0 : -1.0;
        std::vector<double> c = free_row(r, sign);
        c[beta] = -(std::abs(q.level) - half);
        c[m] = -1.0;
        lp.AddRow(std::move(c), Relation::kGreaterEqual, -sign * fixed_part(r));
      } else {
        // r - beta (c - half) - m >= 0 and -r + beta (c + half) - m >= 0.
        std::vector<double> lo = free_row(r, 1.0);
        lo[beta] = -(q.level - half);
        lo[m] = -1.0;
        lp.AddRow(std::move(lo), Relation::kGreaterEqual, -fixed_part(r));
        std::vector<double> hi = free_row(r, -1.0);
        hi[beta] = q.level + half;
        hi[m] = -1.0;
        lp.AddRow(std::move(hi), Relation::kGreaterEqual, fixed_part(r));
      }
    }
  }

  Relaxation out;
  std::vector<double> start;
  if (!hint.empty()) {
    if (static_cast<int>(hint.size()) != total) {
      throw DimensionError("CiProblem::Relax: hint length mismatch");
    }
    start.assign(nf + extra, 0.0);
    for (int j = 0; j < nf; ++j) start[j] = hint[free_idx[j]];
  }
  out.lp = solver.Solve(lp, start);
  out.lp.mult_count += static_cast<std::uint64_t>(nrows) * (total - nf);
  out.x = RealVector::Zero(total);
  for (int i = 0; i < total; ++i) out.x(i) = fixed[i];
  if (out.lp.status == LpStatus::kOptimal) {
    for (int j = 0; j < nf; ++j) out.x(free_idx[j]) = out.lp.v[j];
  }
  return out;
}

}  // namespace onebit::internal
