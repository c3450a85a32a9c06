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

#include "onebit/precoders.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "ci_problem.h"
#include "onebit/ci_geometry.h"
#include "onebit/errors.h"
#include "precoder_common.h"

namespace onebit {

using internal::CiProblem;

RealVector Quantize1Bit(const RealVector& v) {
  RealVector q(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) q(i) = v(i) >= 0.0 ? 1.0 : -1.0;
  return q;
}

double OneBitScale(double pt, int nt) { return std::sqrt(pt / (2.0 * nt)); }

namespace internal {

void ValidateInput(const PrecoderInput& in) {
  if (in.h.rows() < 1 || in.h.cols() < 1) {
    throw DimensionError("precoder: empty channel");
  }
  if (static_cast<Eigen::Index>(in.symbols.size()) != in.h.rows()) {
    throw DimensionError("precoder: need one symbol per user (got " +
                         std::to_string(in.symbols.size()) + " for K = " +
                         std::to_string(in.h.rows()) + ")");
  }
  for (int s : in.symbols) {
    if (s < 0 || s >= in.constellation.order()) {
      throw ParameterError("precoder: symbol index out of range");
    }
  }
  if (!(in.pt > 0.0)) throw ParameterError("precoder: pt must be positive");
  if (!in.h.allFinite()) throw ParameterError("precoder: non-finite channel");
}

ComplexVector SymbolVector(const PrecoderInput& in) {
  ComplexVector s(in.symbols.size());
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    s(k) = in.constellation.point(in.symbols[k]);
  }
  return s;
}

PrecodeOutcome FinishOneBit(const PrecoderInput& in, const RealVector& q,
                            ReceiverScaleRule rule) {
  PrecodeOutcome out;
  const int nt = static_cast<int>(in.h.cols());
  const ComplexVector unscaled = RealUnstack(q);
  out.onebit = true;
  out.power_scale = OneBitScale(in.pt, nt);
  out.x = out.power_scale * unscaled;

  std::optional<double> beta;
  if (in.constellation.is_qam() && rule == ReceiverScaleRule::kLeastSquares) {
    const ComplexVector s = SymbolVector(in);
    const ComplexVector r = in.h * unscaled;
    beta = std::max(s.dot(r).real() / s.squaredNorm(), 1e-12);
  }
  const MarginReport rep =
      ComputeMarginReport(in.h, unscaled, in.symbols, in.constellation, beta);
  out.receiver_scale = rep.receiver_scale;
  out.achieved_margin = rep.received_margin;
  return out;
}

}  // namespace internal

namespace {

using internal::FinishOneBit;
using internal::ReceiverScaleRule;
using internal::SymbolVector;
using internal::ValidateInput;

std::uint64_t GramMults(int k, int n) {
  return 4ULL * k * k * n;
}

// Solves (H H^H + reg I) z = s and returns H^H z.
ComplexVector RegularizedInverse(const ComplexMatrix& h, const ComplexVector& s,
                                 double reg, std::uint64_t& mults) {
  const int k = static_cast<int>(h.rows());
  const int n = static_cast<int>(h.cols());
  if (k > n) {
    throw DimensionError("linear precoding requires K <= N_T");
  }
  ComplexMatrix gram = h * h.adjoint();
  gram.diagonal().array() += reg;
  Eigen::LDLT<ComplexMatrix> ldlt(gram);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.rcond() < 1e-13) {
    throw NumericalError("H H^H is singular to working precision");
  }
  const ComplexVector z = ldlt.solve(s);
  mults += GramMults(k, n) + 4ULL * k * k * k / 3 + 8ULL * k * k + 4ULL * k * n;
  return h.adjoint() * z;
}

double LargestEigenvalue(const ComplexMatrix& h, std::uint64_t& mults) {
  const int k = static_cast<int>(h.rows());
  const ComplexMatrix gram = h * h.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(gram, Eigen::EigenvaluesOnly);
  mults += GramMults(k, static_cast<int>(h.cols())) + 9ULL * 4 * k * k * k;
  return eig.eigenvalues().maxCoeff();
}

PrecodeOutcome AllPlusOne(const PrecoderInput& in, ReceiverScaleRule rule) {
  return FinishOneBit(in, RealVector::Ones(2 * in.h.cols()), rule);
}

}  // namespace

PrecodeOutcome PrecodeZfInf(const PrecoderInput& in) {
  ValidateInput(in);
  PrecodeOutcome out;
  const ComplexVector s = SymbolVector(in);
  const ComplexVector w = RegularizedInverse(in.h, s, 0.0, out.mult_count);
  const double gamma = std::sqrt(in.pt) / w.norm();
  out.mult_count += 2ULL * w.size() * 2 + w.size() * 2;
  out.x = gamma * w;
  out.onebit = false;
  out.power_scale = 1.0;
  const std::optional<double> beta =
      in.constellation.is_qam() ? std::optional<double>(gamma) : std::nullopt;
  const MarginReport rep =
      ComputeMarginReport(in.h, out.x, in.symbols, in.constellation, beta);
  out.receiver_scale = gamma;
  out.achieved_margin = rep.received_margin;
  return out;
}

PrecodeOutcome PrecodeZf1Bit(const PrecoderInput& in) {
  ValidateInput(in);
  std::uint64_t mults = 0;
  const ComplexVector w = RegularizedInverse(in.h, SymbolVector(in), 0.0, mults);
  PrecodeOutcome out =
      FinishOneBit(in, Quantize1Bit(RealStack(w)), ReceiverScaleRule::kLeastSquares);
  out.mult_count = mults;
  return out;
}

PrecodeOutcome PrecodeMmse1Bit(const PrecoderInput& in) {
  ValidateInput(in);
  if (!(in.sigma2 >= 0.0)) throw ParameterError("MMSE: sigma2 must be >= 0");
  const double reg = in.h.rows() * in.sigma2 / in.pt;
  std::uint64_t mults = 2;
  const ComplexVector w = RegularizedInverse(in.h, SymbolVector(in), reg, mults);
  PrecodeOutcome out =
      FinishOneBit(in, Quantize1Bit(RealStack(w)), ReceiverScaleRule::kLeastSquares);
  out.mult_count = mults;
  return out;
}

PrecodeOutcome PrecodeC2po(const PrecoderInput& in, C2poTrace* trace) {
  ValidateInput(in);
  const int iters = in.options.c2po_iterations;
  if (iters < 1) throw ParameterError("C2PO: iteration cap must be >= 1");
  const int k = static_cast<int>(in.h.rows());
  const int n = static_cast<int>(in.h.cols());
  std::uint64_t mults = 0;

  const double lmax = LargestEigenvalue(in.h, mults);
  if (!(lmax > 0.0)) return AllPlusOne(in, ReceiverScaleRule::kLeastSquares);
  const double tau = 1.0 / lmax;

  const RealMatrix ht = RealStackMatrix(in.h);
  const RealVector st = RealStack(SymbolVector(in));
  const double s_energy = st.squaredNorm();

  RealVector x = ht.transpose() * st;
  mults += 4ULL * k * n;
  const double peak = x.cwiseAbs().maxCoeff();
  if (peak > 0.0) x /= peak;
  mults += 2ULL * n;

  const std::uint64_t matvec = 4ULL * k * n;
  for (int it = 0; it < iters; ++it) {
    const RealVector hx = ht * x;
    const double beta = std::max(st.dot(hx) / s_energy, 1e-6);
    const RealVector residual = hx - beta * st;
    const RealVector grad = ht.transpose() * residual;
    if (trace) trace->before.push_back(0.5 * residual.squaredNorm());
    x = (x - tau * grad).cwiseMax(-1.0).cwiseMin(1.0);
    if (trace) trace->after.push_back(0.5 * (ht * x - beta * st).squaredNorm());
    mults += 2 * matvec + 2ULL * k + 1 + 2ULL * k + 2ULL * n;
  }

  PrecodeOutcome out =
      FinishOneBit(in, Quantize1Bit(x), ReceiverScaleRule::kLeastSquares);
  out.mult_count = mults;
  out.iterations = iters;
  return out;
}

PrecodeOutcome PrecodeSquid(const PrecoderInput& in, SquidTrace* trace) {
  ValidateInput(in);
  const int iters = in.options.squid_iterations;
  if (iters < 1) throw ParameterError("SQUID: iteration cap must be >= 1");
  const int k = static_cast<int>(in.h.rows());
  const int n = static_cast<int>(in.h.cols());
  std::uint64_t mults = 0;

  const double lmax = LargestEigenvalue(in.h, mults);
  if (!(lmax > 0.0)) return AllPlusOne(in, ReceiverScaleRule::kLeastSquares);
  const double gamma = 1.0 / lmax;

  // Per-user amplitude reachable with unit total power, expressed in
  // box units (entries +-1 carry power 2N_T).
  const double target =
      std::sqrt(2.0 * n / (std::numbers::pi * k)) * std::sqrt(2.0 * n);

  const RealMatrix ht = RealStackMatrix(in.h);
  const RealVector st = RealStack(SymbolVector(in));
  // prox_f(v) = (I + gamma H~^T H~)^{-1}(v + gamma target H~^T s~), with the
  // inverse applied as w - gamma H~^T (I + gamma H~ H~^T)^{-1} H~ w.
  RealMatrix inner = gamma * (ht * ht.transpose());
  inner.diagonal().array() += 1.0;
  const RealMatrix inner_inv = inner.llt().solve(RealMatrix::Identity(2 * k, 2 * k));
  const RealVector bias = gamma * target * (ht.transpose() * st);
  mults += 8ULL * k * k * n + 8ULL * k * k * k + 4ULL * k * n + 2ULL * n;

  const std::uint64_t matvec = 4ULL * k * n;
  RealVector z = RealVector::Zero(2 * n);
  RealVector x_prev;
  RealVector x;
  for (int it = 0; it < iters; ++it) {
    const RealVector w = z + bias;
    x = w - gamma * (ht.transpose() * (inner_inv * (ht * w)));
    const RealVector y = (2.0 * x - z).cwiseMax(-1.0).cwiseMin(1.0);
    z += y - x;
    mults += 2 * matvec + 4ULL * k * k + 2ULL * k + 2ULL * n;
    if (trace && it > 0) trace->residuals.push_back((x - x_prev).norm());
    x_prev = x;
  }

  PrecodeOutcome out =
      FinishOneBit(in, Quantize1Bit(x), ReceiverScaleRule::kLeastSquares);
  out.mult_count = mults;
  out.iterations = iters;
  return out;
}

PrecodeOutcome PrecodeLp(const PrecoderInput& in) {
  ValidateInput(in);
  const CiProblem problem(in);
  DenseSimplex solver;
  const std::vector<double> none(problem.dim(), 0.0);
  const RealVector guess = problem.MatchedGuess();
  const CiProblem::Relaxation relaxed = problem.Relax(
      none, CiProblem::Form::kCenterScale, solver,
      std::span<const double>(guess.data(), guess.size()));
  if (relaxed.lp.status != LpStatus::kOptimal) {
    throw NumericalError(std::string("1-bit LP relaxation: ") +
                         LpStatusName(relaxed.lp.status));
  }
  PrecodeOutcome out =
      FinishOneBit(in, Quantize1Bit(relaxed.x), ReceiverScaleRule::kBestScale);
  out.mult_count = problem.setup_mults() + relaxed.lp.mult_count;
  out.iterations = relaxed.lp.iterations;
  out.relaxed_objective = relaxed.lp.objective_value;
  return out;
}

PrecodeOutcome PrecodeSs(const PrecoderInput& in, SsTrace* trace) {
  ValidateInput(in);
  if (!in.constellation.is_psk()) {
    throw UnsupportedError("symbol scaling supports PSK only");
  }
  const int n = static_cast<int>(in.h.cols());
  const CiRows ci = BuildPskCiRows(in.h, in.symbols, in.constellation);
  const RealMatrix& a = ci.coeffs;
  const int rows = static_cast<int>(a.rows());
  std::uint64_t mults = 2ULL * rows * 2 * n;

  // Candidates in fixed order: 1+j, 1-j, -1+j, -1-j.
  constexpr std::array<std::array<double, 2>, 4> kCand = {
      {{1.0, 1.0}, {1.0, -1.0}, {-1.0, 1.0}, {-1.0, -1.0}}};
  auto contribution = [&](int ant, int cand) -> RealVector {
    return a.col(ant) * kCand[cand][0] + a.col(n + ant) * kCand[cand][1];
  };

  std::vector<int> choice(n, 0);
  std::vector<char> assigned(n, 0);
  RealVector acc = RealVector::Zero(rows);

  // Stage 1: per-antenna best candidate by summed coefficient gain; the
  // ceil(N/2) antennas with the largest gains are committed.
  std::vector<double> gain(n);
  std::vector<int> best(n);
  for (int j = 0; j < n; ++j) {
    const double sr = a.col(j).sum();
    const double si = a.col(n + j).sum();
    const double qr = sr >= 0.0 ? 1.0 : -1.0;
    const double qi = si >= 0.0 ? 1.0 : -1.0;
    best[j] = (qr > 0 ? 0 : 2) + (qi > 0 ? 0 : 1);
    gain[j] = qr * sr + qi * si;
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int l, int r) { return gain[l] > gain[r]; });
  const int stage1 = (n + 1) / 2;
  for (int i = 0; i < stage1; ++i) {
    const int j = order[i];
    choice[j] = best[j];
    assigned[j] = 1;
    acc += contribution(j, best[j]);
  }

  // Stage 2: remaining antennas by descending channel-column norm, each
  // taking the candidate that maximizes the running minimum coefficient.
  std::vector<int> rest;
  std::vector<double> col_norm(n);
  for (int j = 0; j < n; ++j) {
    col_norm[j] = in.h.col(j).squaredNorm();
    if (!assigned[j]) rest.push_back(j);
  }
  mults += 2ULL * in.h.rows() * n;
  std::stable_sort(rest.begin(), rest.end(),
                   [&](int l, int r) { return col_norm[l] > col_norm[r]; });
  for (int j : rest) {
    int pick = 0;
    double pick_val = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < 4; ++c) {
      const double v = (acc + contribution(j, c)).minCoeff();
      if (v > pick_val) {
        pick_val = v;
        pick = c;
      }
    }
    choice[j] = pick;
    acc += contribution(j, pick);
  }

  // Stage 3: greedy per-antenna refinement; only strict improvements are
  // accepted, so the margin never decreases. When a pass changes nothing,
  // one two-antenna move is tried: the first antenna comes from the single
  // moves that lift the current worst row the most.
  constexpr int kPairSeeds = 8;
  auto pair_move = [&](double margin_now) -> bool {
    Eigen::Index worst = 0;
    acc.minCoeff(&worst);
    struct Move {
      double lift;
      int ant;
      int cand;
    };
    std::vector<Move> seeds;
    for (int j = 0; j < n; ++j) {
      for (int c = 0; c < 4; ++c) {
        if (c == choice[j]) continue;
        const double lift =
            contribution(j, c)(worst) - contribution(j, choice[j])(worst);
        if (lift > 0.0) seeds.push_back({lift, j, c});
      }
    }
    std::stable_sort(seeds.begin(), seeds.end(),
                     [](const Move& l, const Move& r) { return l.lift > r.lift; });
    if (seeds.size() > static_cast<size_t>(kPairSeeds)) seeds.resize(kPairSeeds);
    double best_val = margin_now;
    int bj = -1, bcj = 0, bk = -1, bck = 0;
    for (const Move& m : seeds) {
      const RealVector with_j =
          acc - contribution(m.ant, choice[m.ant]) + contribution(m.ant, m.cand);
      for (int k = 0; k < n; ++k) {
        if (k == m.ant) continue;
        const RealVector base = with_j - contribution(k, choice[k]);
        for (int c = 0; c < 4; ++c) {
          const double v = (base + contribution(k, c)).minCoeff();
          if (v > best_val + 1e-12) {
            best_val = v;
            bj = m.ant;
            bcj = m.cand;
            bk = k;
            bck = c;
          }
        }
      }
    }
    if (bj < 0) return false;
    acc += contribution(bj, bcj) - contribution(bj, choice[bj]) +
           contribution(bk, bck) - contribution(bk, choice[bk]);
    choice[bj] = bcj;
    choice[bk] = bck;
    return true;
  };

  double margin = acc.minCoeff();
  int passes = 0;
  for (; passes < in.options.ss_max_passes; ++passes) {
    bool changed = false;
    for (int j = 0; j < n; ++j) {
      const RealVector without = acc - contribution(j, choice[j]);
      int pick = choice[j];
      double pick_val = margin;
      for (int c = 0; c < 4; ++c) {
        if (c == choice[j]) continue;
        const double v = (without + contribution(j, c)).minCoeff();
        if (v > pick_val + 1e-12) {
          pick_val = v;
          pick = c;
        }
      }
      if (pick != choice[j]) {
        choice[j] = pick;
        acc = without + contribution(j, pick);
        margin = acc.minCoeff();
        changed = true;
      }
      if (trace) trace->stage3_margins.push_back(margin);
    }
    if (!changed && pair_move(margin)) {
      margin = acc.minCoeff();
      changed = true;
      if (trace) trace->stage3_margins.push_back(margin);
    }
    if (!changed) {
      ++passes;
      break;
    }
  }

  RealVector q(2 * n);
  for (int j = 0; j < n; ++j) {
    q(j) = kCand[choice[j]][0];
    q(n + j) = kCand[choice[j]][1];
  }
  PrecodeOutcome out = FinishOneBit(in, q, ReceiverScaleRule::kBestScale);
  out.mult_count = mults;
  out.iterations = passes;
  return out;
}

PrecodeOutcome PrecodeExhaustive(const PrecoderInput& in) {
  ValidateInput(in);
  const int n = static_cast<int>(in.h.cols());
  if (n > 8) {
    throw SizeError("exhaustive search supports N_T <= 8, got " +
                    std::to_string(n));
  }
  const CiProblem problem(in);
  const int bits = 2 * n;
  const std::uint32_t count = 1U << bits;
  RealVector x(bits);
  double best = -std::numeric_limits<double>::infinity();
  std::uint32_t best_pattern = 0;
  // Pattern bit (bits-1-i) set means entry i is +1, so increasing patterns
  // walk stacked vectors in lexicographic order with -1 < +1; a strict
  // comparison keeps the smallest maximizer.
  for (std::uint32_t p = 0; p < count; ++p) {
    for (int i = 0; i < bits; ++i) x(i) = (p >> (bits - 1 - i)) & 1U ? 1.0 : -1.0;
    const double m = problem.Evaluate(x).margin;
    if (m > best) {
      best = m;
      best_pattern = p;
    }
  }
  for (int i = 0; i < bits; ++i) {
    x(i) = (best_pattern >> (bits - 1 - i)) & 1U ? 1.0 : -1.0;
  }
  PrecodeOutcome out = FinishOneBit(in, x, ReceiverScaleRule::kBestScale);
  out.mult_count = problem.setup_mults() + count * problem.evaluate_mults();
  out.iterations = static_cast<int>(count);
  return out;
}

namespace {

PrecodeOutcome RunC2po(const PrecoderInput& in) { return PrecodeC2po(in); }
PrecodeOutcome RunSquid(const PrecoderInput& in) { return PrecodeSquid(in); }
PrecodeOutcome RunSs(const PrecoderInput& in) { return PrecodeSs(in); }
PrecodeOutcome RunPbbFull(const PrecoderInput& in) {
  PrecoderInput full = in;
  full.options.full_bb = true;
  return PrecodePbb(full);
}

constexpr std::array<PrecoderSpec, 10> kRegistry = {{
    {"zf-inf", &PrecodeZfInf, false, false, false, 0},
    {"zf-1bit", &PrecodeZf1Bit, true, false, false, 0},
    {"mmse-1bit", &PrecodeMmse1Bit, true, true, false, 0},
    {"c2po", &RunC2po, true, false, false, 0},
    {"squid", &RunSquid, true, false, false, 0},
    {"lp", &PrecodeLp, true, false, false, 0},
    {"ss", &RunSs, true, false, true, 0},
    {"pbb", &PrecodePbb, true, false, false, 0},
    {"pbb-full", &RunPbbFull, true, false, false, 0},
    {"exhaustive", &PrecodeExhaustive, true, false, false, 8},
}};

}  // namespace

std::span<const PrecoderSpec> PrecoderRegistry() { return kRegistry; }

const PrecoderSpec* FindPrecoder(std::string_view name) {
  for (const PrecoderSpec& p : kRegistry) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace onebit
