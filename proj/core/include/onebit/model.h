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

// Core numeric model: complex channel/noise sampling from counter-based
// random streams and the real-valued stacking used by the optimizers.

#ifndef ONEBIT_MODEL_H_
#define ONEBIT_MODEL_H_

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace onebit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Counter-based random stream. The sample sequence is a pure function of
// (master_seed, stream_index): the i-th 64-bit output is a SplitMix64
// finalizer applied to a key derived from both plus i times the golden
// gamma. Slot-parallel simulations give each slot its own stream_index.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t NextU64();
  // Uniform on [0, 1) with 53 random bits.
  double NextUniform();
  // Uniform integer in [0, bound); bound must be positive.
  std::uint64_t NextBelow(std::uint64_t bound);
  double NextGaussian();
  // Circularly-symmetric complex Gaussian CN(0, variance).
  Complex NextComplexGaussian(double variance = 1.0);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t z);

struct ChannelRealization {
  ComplexMatrix h;  // K x N_T
  std::uint64_t seed_tag = 0;

  int users() const { return static_cast<int>(h.rows()); }
  int antennas() const { return static_cast<int>(h.cols()); }
};

struct NoiseModel {
  double sigma2 = 1.0;
};

// Draws a K x N_T matrix with i.i.d. CN(0,1) entries (row-major draw order).
ChannelRealization SampleChannel(RngStream& rng, int k, int nt);

// Length-K vector of i.i.d. CN(0, sigma2) samples.
ComplexVector SampleNoise(RngStream& rng, int k, const NoiseModel& noise);

// Transmit SNR convention: SNR = pt / sigma2.
NoiseModel SnrToSigma2(double snr_db, double pt = 1.0);

// [Re z; Im z].
RealVector RealStack(const ComplexVector& z);
// [[Re H, -Im H], [Im H, Re H]], so that
// RealStack(H z) == RealStackMatrix(H) * RealStack(z).
RealMatrix RealStackMatrix(const ComplexMatrix& h);
// Inverse of RealStack; v must have even length.
ComplexVector RealUnstack(const RealVector& v);

}  // namespace onebit

#endif  // ONEBIT_MODEL_H_
