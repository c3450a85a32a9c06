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

#include "onebit/sim.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "onebit/errors.h"
#include "onebit/modem.h"

namespace onebit {
namespace {

constexpr std::int64_t kBlockSlots = 64;

struct Accum {
  std::vector<std::uint64_t> errors;
  std::vector<double> margin;
  std::vector<double> mults;
  std::vector<double> nanos;
};

class SlotRunner {
 public:
  SlotRunner(const SimConfig& cfg, const Constellation& c,
             std::vector<const PrecoderSpec*> specs)
      : cfg_(cfg), c_(c), specs_(std::move(specs)) {
    for (double snr : cfg_.snr_db) sigma2_.push_back(SnrToSigma2(snr, cfg_.pt).sigma2);
  }

  std::size_t cells() const { return specs_.size() * sigma2_.size(); }

  Accum NewAccum() const {
    return {std::vector<std::uint64_t>(cells(), 0), std::vector<double>(cells(), 0.0),
            std::vector<double>(cells(), 0.0), std::vector<double>(cells(), 0.0)};
  }

  void Run(std::int64_t slot, Accum& acc) const {
    RngStream rng(cfg_.master_seed, static_cast<std::uint64_t>(slot));
    const ChannelRealization ch = SampleChannel(rng, cfg_.k, cfg_.nt);
    std::vector<int> symbols(cfg_.k);
    for (int& s : symbols) s = static_cast<int>(rng.NextBelow(c_.order()));
    const std::size_t ns = sigma2_.size();
    std::vector<ComplexVector> unit_noise(ns);
    for (std::size_t s = 0; s < ns; ++s) {
      unit_noise[s] = SampleNoise(rng, cfg_.k, NoiseModel{1.0});
    }

    for (std::size_t p = 0; p < specs_.size(); ++p) {
      const PrecoderSpec& spec = *specs_[p];
      PrecodeOutcome out;
      for (std::size_t s = 0; s < ns; ++s) {
        if (s == 0 || spec.snr_dependent) {
          const PrecoderInput in{ch.h, symbols, c_, cfg_.pt, sigma2_[s], cfg_.options};
          const auto t0 = std::chrono::steady_clock::now();
          out = spec.run(in);
          const auto t1 = std::chrono::steady_clock::now();
          const double ns_spent =
              std::chrono::duration<double, std::nano>(t1 - t0).count();
          if (spec.snr_dependent) {
            acc.nanos[p * ns + s] += ns_spent;
          } else {
            for (std::size_t q = 0; q < ns; ++q) acc.nanos[p * ns + q] += ns_spent;
          }
        }
        const std::size_t cell = p * ns + s;
        acc.margin[cell] += out.achieved_margin;
        acc.mults[cell] += static_cast<double>(out.mult_count);
        const ComplexVector y =
            ch.h * out.x + std::sqrt(sigma2_[s]) * unit_noise[s];
        const double scale = c_.is_qam() ? out.power_scale * out.receiver_scale : 1.0;
        std::uint64_t errs = 0;
        for (int u = 0; u < cfg_.k; ++u) {
          const int detected = Detect(y(u) / scale, c_);
          errs += std::popcount(c_.label(detected) ^ c_.label(symbols[u]));
        }
        acc.errors[cell] += errs;
      }
    }
  }

 private:
  const SimConfig& cfg_;
  const Constellation& c_;
  std::vector<const PrecoderSpec*> specs_;
  std::vector<double> sigma2_;
};

}  // namespace

const BerPoint* BerCurves::Find(const std::string& precoder, double snr_db) const {
  for (const BerPoint& p : points) {
    if (p.precoder == precoder && std::abs(p.snr_db - snr_db) < 1e-9) return &p;
  }
  return nullptr;
}

WilsonInterval Wilson95(std::uint64_t errors, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / n;
  const double denom = 1.0 + z * z / n;
  const double center = (p + z * z / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

void ValidateConfig(const SimConfig& cfg) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (cfg.nt < 1 || cfg.k < 1) fail("nt and k must be positive");
  if (cfg.k > cfg.nt) fail("k must not exceed nt");
  if (cfg.slots < 1) fail("slots must be >= 1");
  if (cfg.threads < 1) fail("threads must be >= 1");
  if (!(cfg.pt > 0.0)) fail("pt must be positive");
  if (cfg.snr_db.empty()) fail("SNR grid is empty");
  for (double s : cfg.snr_db) {
    if (!std::isfinite(s)) fail("SNR values must be finite");
  }
  if (cfg.precoders.empty()) fail("no precoders selected");
  Constellation c;
  try {
    c = ConstellationFromName(cfg.modulation);
  } catch (const ParameterError& e) {
    fail(e.what());
  }
  std::set<std::string> seen;
  for (const std::string& name : cfg.precoders) {
    const PrecoderSpec* spec = FindPrecoder(name);
    if (!spec) fail("unknown precoder '" + name + "'");
    if (!seen.insert(name).second) fail("duplicate precoder '" + name + "'");
    if (spec->psk_only && !c.is_psk()) fail(name + " supports PSK only");
    if (spec->max_antennas > 0 && cfg.nt > spec->max_antennas) {
      fail(name + " supports at most " + std::to_string(spec->max_antennas) +
           " antennas");
    }
  }
  const PrecoderOptions& o = cfg.options;
  if (o.c2po_iterations < 1 || o.squid_iterations < 1 || o.ss_max_passes < 0 ||
      o.pbb_node_limit < 1 || !(o.pbb_fix_threshold >= 0.0)) {
    fail("invalid precoder options");
  }
}

BerCurves RunBerSim(const SimConfig& cfg) {
  ValidateConfig(cfg);
  const Constellation c = ConstellationFromName(cfg.modulation);
  std::vector<const PrecoderSpec*> specs;
  for (const std::string& name : cfg.precoders) specs.push_back(FindPrecoder(name));
  const SlotRunner runner(cfg, c, specs);

  const std::int64_t blocks = (cfg.slots + kBlockSlots - 1) / kBlockSlots;
  std::vector<Accum> block_acc(blocks);
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    for (;;) {
      const std::int64_t b = next.fetch_add(1);
      if (b >= blocks || stop.load()) return;
      try {
        Accum acc = runner.NewAccum();
        const std::int64_t end = std::min(cfg.slots, (b + 1) * kBlockSlots);
        for (std::int64_t s = b * kBlockSlots; s < end; ++s) runner.Run(s, acc);
        block_acc[b] = std::move(acc);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        stop.store(true);
        return;
      }
    }
  };

  const int nthreads =
      static_cast<int>(std::min<std::int64_t>(cfg.threads, blocks));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  Accum total = runner.NewAccum();
  for (const Accum& a : block_acc) {
    for (std::size_t i = 0; i < runner.cells(); ++i) {
      total.errors[i] += a.errors[i];
      total.margin[i] += a.margin[i];
      total.mults[i] += a.mults[i];
      total.nanos[i] += a.nanos[i];
    }
  }

  BerCurves curves;
  curves.config = cfg;
  const std::size_t ns = cfg.snr_db.size();
  const std::uint64_t bits = static_cast<std::uint64_t>(cfg.slots) * cfg.k *
                             static_cast<std::uint64_t>(c.bits_per_symbol());
  for (std::size_t p = 0; p < specs.size(); ++p) {
    for (std::size_t s = 0; s < ns; ++s) {
      const std::size_t cell = p * ns + s;
      BerPoint pt;
      pt.precoder = cfg.precoders[p];
      pt.snr_db = cfg.snr_db[s];
      pt.bits = bits;
      pt.bit_errors = total.errors[cell];
      pt.ber = static_cast<double>(pt.bit_errors) / static_cast<double>(bits);
      pt.avg_margin = total.margin[cell] / static_cast<double>(cfg.slots);
      pt.avg_mults = total.mults[cell] / static_cast<double>(cfg.slots);
      pt.wallclock_ms = cfg.record_timing ? total.nanos[cell] * 1e-6 : 0.0;
      const WilsonInterval w = Wilson95(pt.bit_errors, pt.bits);
      pt.ci_low = w.low;
      pt.ci_high = w.high;
      curves.points.push_back(std::move(pt));
    }
  }
  std::stable_sort(curves.points.begin(), curves.points.end(),
                   [](const BerPoint& l, const BerPoint& r) {
                     if (l.precoder != r.precoder) return l.precoder < r.precoder;
                     return l.snr_db < r.snr_db;
                   });
  return curves;
}

std::vector<double> ParseSnrGrid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  auto parse = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size() || !std::isfinite(v)) throw ConfigError("");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("invalid SNR grid '" + spec + "'");
    }
  };
  if (parts.size() == 1) return {parse(parts[0])};
  if (parts.size() != 3) {
    throw ConfigError("SNR grid must be 'start:step:stop' or a single value");
  }
  const double start = parse(parts[0]);
  const double step = parse(parts[1]);
  const double stop = parse(parts[2]);
  if (!(step > 0.0) || stop < start) {
    throw ConfigError("SNR grid needs step > 0 and stop >= start");
  }
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (count > 100000) throw ConfigError("SNR grid too long");
  std::vector<double> grid(count);
  for (long i = 0; i < count; ++i) grid[i] = start + static_cast<double>(i) * step;
  return grid;
}

double DynamicRangeRatio(const ComplexVector& h, double pt) {
  const int nt = static_cast<int>(h.size());
  if (nt < 1) throw DimensionError("DynamicRangeRatio: empty channel");
  const double hn = h.norm();
  if (hn == 0.0) throw ParameterError("DynamicRangeRatio: zero channel");
  const ComplexVector q = RealUnstack(Quantize1Bit(RealStack(h.conjugate())));
  const Complex gain = (h.transpose() * q).value();
  const double amp_1bit = OneBitScale(pt, nt) * std::abs(gain);
  return amp_1bit / (std::sqrt(pt) * hn);
}

double DynamicRangeExperiment(int nt, int trials, std::uint64_t master_seed) {
  if (nt < 64) throw ParameterError("dynamic range experiment needs nt >= 64");
  if (trials < 10) throw ParameterError("dynamic range experiment needs trials >= 10");
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    RngStream rng(master_seed, static_cast<std::uint64_t>(t));
    const ChannelRealization ch = SampleChannel(rng, 1, nt);
    sum += DynamicRangeRatio(ch.h.row(0).transpose());
  }
  return sum / trials;
}

ComplexityReport CountMultiplications(const SimConfig& cfg) {
  ValidateConfig(cfg);
  const Constellation c = ConstellationFromName(cfg.modulation);
  const double sigma2 = SnrToSigma2(cfg.snr_db.front(), cfg.pt).sigma2;
  ComplexityReport report;
  for (const std::string& name : cfg.precoders) {
    const PrecoderSpec* spec = FindPrecoder(name);
    double mults = 0.0;
    double iters = 0.0;
    for (std::int64_t s = 0; s < cfg.slots; ++s) {
      RngStream rng(cfg.master_seed, static_cast<std::uint64_t>(s));
      const ChannelRealization ch = SampleChannel(rng, cfg.k, cfg.nt);
      std::vector<int> symbols(cfg.k);
      for (int& v : symbols) v = static_cast<int>(rng.NextBelow(c.order()));
      const PrecoderInput in{ch.h, symbols, c, cfg.pt, sigma2, cfg.options};
      const PrecodeOutcome out = spec->run(in);
      mults += static_cast<double>(out.mult_count);
      iters += out.iterations;
    }
    report.entries.push_back({name, mults / static_cast<double>(cfg.slots),
                              iters / static_cast<double>(cfg.slots)});
  }
  return report;
}

SelftestResult RunOracleSelftest(int instances, std::uint64_t master_seed) {
  SelftestResult result;
  const Constellation qpsk = BuildPsk(4);
  const Constellation psk8 = BuildPsk(8);
  for (int i = 0; i < instances; ++i) {
    RngStream rng(master_seed, static_cast<std::uint64_t>(i));
    const int nt = 2 + static_cast<int>(rng.NextBelow(5));
    const int k = 1 + static_cast<int>(rng.NextBelow(2));
    const Constellation& c = rng.NextBelow(2) ? psk8 : qpsk;
    const ChannelRealization ch = SampleChannel(rng, k, nt);
    std::vector<int> symbols(k);
    for (int& s : symbols) s = static_cast<int>(rng.NextBelow(c.order()));
    PrecoderInput in{ch.h, symbols, c};
    in.options.full_bb = true;
    const PrecodeOutcome bb = PrecodePbb(in);
    const PrecodeOutcome ex = PrecodeExhaustive(in);
    const double gap = std::abs(bb.achieved_margin - ex.achieved_margin);
    result.worst_gap = std::max(result.worst_gap, gap);
    if (gap > 1e-9) ++result.oracle_mismatches;
    if (*bb.relaxed_objective < ex.achieved_margin - 1e-9) {
      ++result.relaxation_violations;
    }
    ++result.instances;
  }
  return result;
}

}  // namespace onebit
