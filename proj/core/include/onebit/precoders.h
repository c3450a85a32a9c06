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

// 1-bit downlink transmit-signal designers. Every precoder maps a channel,
// the intended symbols and a power budget to a transmit vector; 1-bit
// outputs satisfy x = g * q with q in {+-1 +- j}^N_T and g = sqrt(pt / 2N_T).

#ifndef ONEBIT_PRECODERS_H_
#define ONEBIT_PRECODERS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "onebit/model.h"
#include "onebit/modem.h"

namespace onebit {

struct PrecoderOptions {
  int c2po_iterations = 20;
  int squid_iterations = 50;
  int ss_max_passes = 10;
  // Relaxed entries with |x| >= 1 - eps are fixed before branching.
  double pbb_fix_threshold = 1e-6;
  int pbb_node_limit = 10000;
  bool full_bb = false;
};

struct PrecoderInput {
  const ComplexMatrix& h;      // K x N_T
  std::span<const int> symbols;  // symbol indices, length K
  const Constellation& constellation;
  double pt = 1.0;
  double sigma2 = 1.0;  // MMSE regularization only
  PrecoderOptions options = {};
};

struct PrecodeOutcome {
  ComplexVector x;
  bool onebit = false;
  double power_scale = 1.0;     // g
  double receiver_scale = 1.0;  // beta, QAM receivers divide by g * beta
  // Margin of H x / g in received units: PSK symbol-scaling margin, QAM
  // receiver_scale times the scaled-coordinate margin.
  double achieved_margin = 0.0;
  std::uint64_t mult_count = 0;
  int iterations = 0;
  bool truncated = false;
  // Optimal value of the LP relaxation, for LP-based precoders.
  std::optional<double> relaxed_objective;
};

// Per-iteration objective 0.5 ||H~x~ - beta s~||^2 before and after the
// projected gradient step, both at that iteration's beta.
struct C2poTrace {
  std::vector<double> before;
  std::vector<double> after;
};

struct SquidTrace {
  std::vector<double> residuals;  // ||x^(t+1) - x^(t)||
};

struct SsTrace {
  std::vector<double> stage3_margins;  // after every refinement visit
};

// Elementwise sign with sign(0) = +1.
RealVector Quantize1Bit(const RealVector& v);
double OneBitScale(double pt, int nt);

PrecodeOutcome PrecodeZfInf(const PrecoderInput& in);
PrecodeOutcome PrecodeZf1Bit(const PrecoderInput& in);
PrecodeOutcome PrecodeMmse1Bit(const PrecoderInput& in);
PrecodeOutcome PrecodeC2po(const PrecoderInput& in, C2poTrace* trace = nullptr);
PrecodeOutcome PrecodeSquid(const PrecoderInput& in,
                            SquidTrace* trace = nullptr);
PrecodeOutcome PrecodeLp(const PrecoderInput& in);
PrecodeOutcome PrecodeSs(const PrecoderInput& in, SsTrace* trace = nullptr);
PrecodeOutcome PrecodePbb(const PrecoderInput& in);
PrecodeOutcome PrecodeExhaustive(const PrecoderInput& in);

struct PrecoderSpec {
  std::string_view name;
  PrecodeOutcome (*run)(const PrecoderInput&);
  bool onebit;
  bool snr_dependent;  // output depends on sigma2
  bool psk_only;
  int max_antennas;  // 0 = unlimited
};

// zf-inf, zf-1bit, mmse-1bit, c2po, squid, lp, ss, pbb, pbb-full, exhaustive.
std::span<const PrecoderSpec> PrecoderRegistry();
const PrecoderSpec* FindPrecoder(std::string_view name);

}  // namespace onebit

#endif  // ONEBIT_PRECODERS_H_
