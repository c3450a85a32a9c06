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

// Per-slot precoder cost at N_T=128, K=8, 8PSK, plus a raw simplex solve
// and the small full branch-and-bound case.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "onebit/lp.h"
#include "onebit/model.h"
#include "onebit/modem.h"
#include "onebit/precoders.h"

namespace onebit {
namespace {

struct Workload {
  Constellation c;
  std::vector<ComplexMatrix> h;
  std::vector<std::vector<int>> symbols;
};

Workload MakeWorkload(int nt, int k, const std::string& mod, int count) {
  Workload w{ConstellationFromName(mod), {}, {}};
  for (int i = 0; i < count; ++i) {
    RngStream rng(42, static_cast<std::uint64_t>(i));
    w.h.push_back(SampleChannel(rng, k, nt).h);
    std::vector<int> s(k);
    for (int& v : s) v = static_cast<int>(rng.NextBelow(w.c.order()));
    w.symbols.push_back(std::move(s));
  }
  return w;
}

void BM_Precoder(benchmark::State& state, const char* name) {
  static const Workload w = MakeWorkload(128, 8, "8psk", 64);
  const PrecoderSpec* spec = FindPrecoder(name);
  std::size_t i = 0;
  double mults = 0;
  for (auto _ : state) {
    const PrecoderInput in{w.h[i], w.symbols[i], w.c, 1.0, 0.1};
    const PrecodeOutcome out = spec->run(in);
    benchmark::DoNotOptimize(out.achieved_margin);
    mults += static_cast<double>(out.mult_count);
    i = (i + 1) % w.h.size();
  }
  state.counters["mults"] =
      benchmark::Counter(mults, benchmark::Counter::kAvgIterations);
}

BENCHMARK_CAPTURE(BM_Precoder, zf_inf, "zf-inf")->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Precoder, zf_1bit, "zf-1bit")->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Precoder, mmse_1bit, "mmse-1bit")->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Precoder, c2po, "c2po")->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Precoder, squid, "squid")->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Precoder, ss, "ss")->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Precoder, lp, "lp")->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Precoder, pbb, "pbb")->Unit(benchmark::kMicrosecond);

// Dense random LP with n variables in [-1, 1] and n / 2 rows.
void BM_SimplexSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RngStream rng(7, 0);
  LinearProgram lp(n);
  for (int j = 0; j < n; ++j) {
    lp.objective[j] = rng.NextGaussian();
    lp.lower[j] = -1.0;
    lp.upper[j] = 1.0;
  }
  for (int i = 0; i < n / 2; ++i) {
    std::vector<double> a(n);
    for (double& v : a) v = rng.NextGaussian();
    lp.AddRow(std::move(a), Relation::kLessEqual, rng.NextUniform());
  }
  for (auto _ : state) {
    const LpSolution s = SolveLp(lp);
    benchmark::DoNotOptimize(s.objective_value);
  }
}
BENCHMARK(BM_SimplexSolve)->Arg(32)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_FullBranchAndBound(benchmark::State& state) {
  static const Workload w = MakeWorkload(6, 2, "qpsk", 16);
  std::size_t i = 0;
  for (auto _ : state) {
    PrecoderInput in{w.h[i], w.symbols[i], w.c};
    in.options.full_bb = true;
    benchmark::DoNotOptimize(PrecodePbb(in).achieved_margin);
    i = (i + 1) % w.h.size();
  }
}
BENCHMARK(BM_FullBranchAndBound)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace onebit

BENCHMARK_MAIN();
