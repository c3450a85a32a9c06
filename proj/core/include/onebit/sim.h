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

// Monte-Carlo uncoded-BER engine, dynamic-range and complexity studies.

#ifndef ONEBIT_SIM_H_
#define ONEBIT_SIM_H_

#include <cstdint>
#include <string>
#include <vector>

#include "onebit/model.h"
#include "onebit/precoders.h"

namespace onebit {

struct SimConfig {
  int nt = 128;
  int k = 8;
  std::string modulation = "8psk";
  std::vector<double> snr_db = {10.0};
  std::int64_t slots = 1000;
  std::uint64_t master_seed = 1;
  std::vector<std::string> precoders = {"lp"};
  PrecoderOptions options;
  double pt = 1.0;
  int threads = 1;
  // When false, wallclock fields are reported as 0 so outputs are
  // byte-reproducible.
  bool record_timing = true;
};

struct BerPoint {
  std::string precoder;
  double snr_db = 0.0;
  std::uint64_t bits = 0;
  std::uint64_t bit_errors = 0;
  double ber = 0.0;
  double avg_margin = 0.0;
  double avg_mults = 0.0;
  double wallclock_ms = 0.0;
  double ci_low = 0.0;  // Wilson 95%
  double ci_high = 0.0;
};

struct BerCurves {
  SimConfig config;
  // Sorted by (precoder, snr_db).
  std::vector<BerPoint> points;

  const BerPoint* Find(const std::string& precoder, double snr_db) const;
};

struct WilsonInterval {
  double low = 0.0;
  double high = 0.0;
};
WilsonInterval Wilson95(std::uint64_t errors, std::uint64_t trials);

// Throws ConfigError on an invalid configuration before any slot runs.
void ValidateConfig(const SimConfig& cfg);

// Per slot s (stream index s of master_seed): fresh channel, uniform
// symbols, one precoding per precoder (per SNR for SNR-dependent ones),
// y = H x + n, PSK detection directly, QAM detection of y / (g beta), Gray
// bit-error counting. Slots are processed in fixed blocks and reduced in
// block order, so results do not depend on the thread count.
BerCurves RunBerSim(const SimConfig& cfg);

// Parses "start:step:stop" (dB, inclusive) or a single value.
std::vector<double> ParseSnrGrid(const std::string& spec);

// Received amplitude of the 1-bit matched-filter vector over the
// unquantized matched filter at equal power, for one user channel h.
double DynamicRangeRatio(const ComplexVector& h, double pt = 1.0);
// Mean DynamicRangeRatio over i.i.d. CN(0,1) channels; stream t of
// master_seed for trial t.
double DynamicRangeExperiment(int nt, int trials, std::uint64_t master_seed);

struct ComplexityEntry {
  std::string precoder;
  double mean_mults = 0.0;
  double mean_iterations = 0.0;
};

struct ComplexityReport {
  std::vector<ComplexityEntry> entries;
};

// Mean analytic real-multiplication counts over cfg.slots noiseless slots,
// at the first SNR of the grid.
ComplexityReport CountMultiplications(const SimConfig& cfg);

struct SelftestResult {
  int instances = 0;
  int oracle_mismatches = 0;       // |pbb-full - exhaustive| > 1e-9
  int relaxation_violations = 0;   // t_LP < exhaustive - 1e-9
  double worst_gap = 0.0;
};

// Random instances with N_T in {2..6}, K in {1, 2}, QPSK and 8PSK:
// full branch-and-bound against exhaustive search.
SelftestResult RunOracleSelftest(int instances, std::uint64_t master_seed);

}  // namespace onebit

#endif  // ONEBIT_SIM_H_
