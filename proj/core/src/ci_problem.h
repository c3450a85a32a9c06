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

#ifndef ONEBIT_SRC_CI_PROBLEM_H_
#define ONEBIT_SRC_CI_PROBLEM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "onebit/ci_geometry.h"
#include "onebit/lp.h"
#include "onebit/precoders.h"

namespace onebit::internal {

// Max-min margin problem over stacked transmit vectors x~ in [-1, 1]^{2N}.
//
// PSK: margin(x~) = min_i (A x~)_i with A from BuildPskCiRows.
// QAM: r = G x~ with one row of G per (user, dimension); the score of a
// fixed vector is the best-receiver-scale margin in received units.
class CiProblem {
 public:
  explicit CiProblem(const PrecoderInput& in);

  bool psk() const { return psk_; }
  int dim() const { return static_cast<int>(rows_.cols()); }
  // Multiplications spent building the rows.
  std::uint64_t setup_mults() const { return setup_mults_; }

  struct Score {
    double margin = 0.0;
    double beta = 1.0;
  };
  Score Evaluate(const RealVector& x) const;
  std::uint64_t evaluate_mults() const {
    return static_cast<std::uint64_t>(rows_.rows()) * rows_.cols();
  }

  enum class Form {
    // PSK: max t s.t. A x >= t. QAM: max t s.t. Inner G_d x = t c_d,
    // Outer sign(c_d) G_d x >= t |c_d|.
    kCenterScale,
    // PSK: same as kCenterScale. QAM: max m over (x, beta >= 0, m) with
    // QamDimMargin(G_d x, beta) >= m for every dimension.
    kMargin,
  };

  struct Relaxation {
    LpSolution lp;
    RealVector x;  // full stacked vector, fixed entries included
  };
  // fixed[i] is +-1 for fixed entries and 0 for relaxed ones. hint, when
  // given, is a full-length guess used to warm-start the simplex.
  Relaxation Relax(std::span<const double> fixed, Form form,
                   DenseSimplex& solver,
                   std::span<const double> hint = {}) const;

  // Cheap full-length starting guess: the direction that raises every
  // row's target in aggregate.
  RealVector MatchedGuess() const;

 private:
  bool psk_;
  RealMatrix rows_;
  std::vector<QamConstraint> targets_;
  double spacing_ = 0.0;
  std::uint64_t setup_mults_ = 0;
};

}  // namespace onebit::internal

#endif  // ONEBIT_SRC_CI_PROBLEM_H_
