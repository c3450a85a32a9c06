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

#include "onebit/model.h"

#include <cmath>
#include <numbers>
#include <string>

#include "onebit/errors.h"

namespace onebit {
namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

}  // namespace

std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed),
      stream_index_(stream_index),
      key_(Mix64(Mix64(master_seed) ^ Mix64(stream_index + kGoldenGamma))) {}

std::uint64_t RngStream::NextU64() {
  ++counter_;
  return Mix64(key_ + counter_ * kGoldenGamma);
}

double RngStream::NextUniform() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::NextBelow(std::uint64_t bound) {
  if (bound == 0) throw ParameterError("NextBelow: bound must be positive");
  if ((bound & (bound - 1)) == 0) return NextU64() & (bound - 1);
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  std::uint64_t v;
  do {
    v = NextU64();
  } while (v >= limit);
  return v % bound;
}

double RngStream::NextGaussian() {
  const double u = 1.0 - NextUniform();  // (0, 1]
  const double v = NextUniform();
  return std::sqrt(-2.0 * std::log(u)) *
         std::cos(2.0 * std::numbers::pi * v);
}

Complex RngStream::NextComplexGaussian(double variance) {
  // |z|^2 ~ Exp(mean variance), phase uniform.
  const double u = 1.0 - NextUniform();
  const double v = NextUniform();
  const double r = std::sqrt(-variance * std::log(u));
  const double phase = 2.0 * std::numbers::pi * v;
  return {r * std::cos(phase), r * std::sin(phase)};
}

ChannelRealization SampleChannel(RngStream& rng, int k, int nt) {
  if (k < 1 || nt < 1) {
    throw DimensionError("SampleChannel: dimensions must be positive, got " +
                         std::to_string(k) + "x" + std::to_string(nt));
  }
  ChannelRealization out;
  out.seed_tag = rng.stream_index();
  out.h.resize(k, nt);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < nt; ++c) out.h(r, c) = rng.NextComplexGaussian(1.0);
  }
  return out;
}

ComplexVector SampleNoise(RngStream& rng, int k, const NoiseModel& noise) {
  if (!(noise.sigma2 > 0.0)) {
    throw ParameterError("SampleNoise: sigma2 must be positive");
  }
  if (k < 1) throw DimensionError("SampleNoise: k must be positive");
  ComplexVector n(k);
  for (int i = 0; i < k; ++i) n(i) = rng.NextComplexGaussian(noise.sigma2);
  return n;
}

NoiseModel SnrToSigma2(double snr_db, double pt) {
  if (!(pt > 0.0)) throw ParameterError("SnrToSigma2: pt must be positive");
  return NoiseModel{pt / std::pow(10.0, snr_db / 10.0)};
}

RealVector RealStack(const ComplexVector& z) {
  const Eigen::Index n = z.size();
  RealVector out(2 * n);
  out.head(n) = z.real();
  out.tail(n) = z.imag();
  return out;
}

RealMatrix RealStackMatrix(const ComplexMatrix& h) {
  const Eigen::Index k = h.rows();
  const Eigen::Index n = h.cols();
  RealMatrix out(2 * k, 2 * n);
  out.topLeftCorner(k, n) = h.real();
  out.topRightCorner(k, n) = -h.imag();
  out.bottomLeftCorner(k, n) = h.imag();
  out.bottomRightCorner(k, n) = h.real();
  return out;
}

ComplexVector RealUnstack(const RealVector& v) {
  if (v.size() % 2 != 0) throw DimensionError("RealUnstack: odd length");
  const Eigen::Index n = v.size() / 2;
  ComplexVector out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = Complex(v(i), v(n + i));
  return out;
}

}  // namespace onebit
