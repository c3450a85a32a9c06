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

// Partial branch-and-bound over the 1-bit entries left fractional by the
// relaxed CI linear program.

#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "ci_problem.h"
#include "onebit/errors.h"
#include "onebit/precoders.h"
#include "precoder_common.h"

namespace onebit {
namespace {

using internal::CiProblem;

constexpr double kPruneTolerance = 1e-9;
constexpr double kIntegralTolerance = 1e-9;

struct Node {
  double bound;
  std::int64_t id;
  std::vector<double> fixed;  // +-1 assigned, 0 open
  std::vector<double> hint;   // parent relaxation, warm start
};

struct NodeOrder {
  // Best bound first, then creation order.
  bool operator()(const Node& l, const Node& r) const {
    if (l.bound != r.bound) return l.bound < r.bound;
    return l.id > r.id;
  }
};

double SignOf(double v) { return v >= 0.0 ? 1.0 : -1.0; }

}  // namespace

PrecodeOutcome PrecodePbb(const PrecoderInput& in) {
  internal::ValidateInput(in);
  const PrecoderOptions& opt = in.options;
  if (opt.pbb_node_limit < 1) throw ParameterError("P-BB: node_limit must be >= 1");
  const CiProblem problem(in);
  const int dim = problem.dim();
  DenseSimplex solver;
  std::uint64_t mults = problem.setup_mults();

  const std::vector<double> open(dim, 0.0);
  const RealVector guess = problem.MatchedGuess();
  const CiProblem::Relaxation root = problem.Relax(
      open, CiProblem::Form::kCenterScale, solver,
      std::span<const double>(guess.data(), guess.size()));
  mults += root.lp.mult_count;
  if (root.lp.status != LpStatus::kOptimal) {
    throw NumericalError(std::string("P-BB root relaxation: ") +
                         LpStatusName(root.lp.status));
  }

  RealVector incumbent = Quantize1Bit(root.x);
  double incumbent_margin = problem.Evaluate(incumbent).margin;
  mults += problem.evaluate_mults();

  std::vector<double> start(dim, 0.0);
  int open_count = 0;
  for (int i = 0; i < dim; ++i) {
    if (!opt.full_bb && std::abs(root.x(i)) >= 1.0 - opt.pbb_fix_threshold) {
      start[i] = SignOf(root.x(i));
    } else {
      ++open_count;
    }
  }

  auto consider = [&](const RealVector& candidate) {
    const double m = problem.Evaluate(candidate).margin;
    mults += problem.evaluate_mults();
    if (m > incumbent_margin) {
      incumbent_margin = m;
      incumbent = candidate;
    }
  };

  int solved = 0;
  bool truncated = false;
  if (open_count > 0) {
    std::priority_queue<Node, std::vector<Node>, NodeOrder> frontier;
    std::int64_t next_id = 0;
    frontier.push({std::numeric_limits<double>::infinity(), next_id++, start,
                   std::vector<double>(root.x.data(), root.x.data() + dim)});
    while (!frontier.empty()) {
      Node node = frontier.top();
      frontier.pop();
      if (node.bound <= incumbent_margin + kPruneTolerance) continue;

      bool leaf = true;
      for (double f : node.fixed) leaf = leaf && f != 0.0;
      if (leaf) {
        consider(Eigen::Map<const RealVector>(node.fixed.data(), dim));
        continue;
      }
      if (solved >= opt.pbb_node_limit) {
        truncated = true;
        break;
      }
      const CiProblem::Relaxation rel =
          problem.Relax(node.fixed, CiProblem::Form::kMargin, solver, node.hint);
      ++solved;
      mults += rel.lp.mult_count;
      if (rel.lp.status == LpStatus::kInfeasible) continue;
      if (rel.lp.status != LpStatus::kOptimal) {
        throw NumericalError(std::string("P-BB node relaxation: ") +
                             LpStatusName(rel.lp.status));
      }
      const double bound = rel.lp.objective_value;
      if (bound <= incumbent_margin + kPruneTolerance) continue;

      consider(Quantize1Bit(rel.x));

      int branch = -1;
      double most_fractional = std::numeric_limits<double>::infinity();
      for (int i = 0; i < dim; ++i) {
        if (node.fixed[i] != 0.0) continue;
        const double dist = 1.0 - std::abs(rel.x(i));
        if (dist <= kIntegralTolerance) continue;
        if (std::abs(rel.x(i)) < most_fractional) {
          most_fractional = std::abs(rel.x(i));
          branch = i;
        }
      }
      // Integral relaxation: its quantization attains the bound.
      if (branch < 0) continue;

      const double first = SignOf(rel.x(branch));
      for (double v : {first, -first}) {
        Node child{bound, next_id++, node.fixed,
                   std::vector<double>(rel.x.data(), rel.x.data() + dim)};
        child.fixed[branch] = v;
        frontier.push(std::move(child));
      }
    }
  }

  PrecodeOutcome out = internal::FinishOneBit(
      in, incumbent, internal::ReceiverScaleRule::kBestScale);
  out.mult_count = mults;
  out.iterations = solved;
  out.truncated = truncated;
  out.relaxed_objective = root.lp.objective_value;
  return out;
}

}  // namespace onebit
