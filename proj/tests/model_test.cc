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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "onebit/errors.h"

namespace onebit {
namespace {

TEST(RngStreamTest, SameSeedAndStreamRepeat) {
  RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.NextU64(), b.NextU64());
}

TEST(RngStreamTest, StreamsDiffer) {
  RngStream a(42, 7), b(42, 8), c(43, 7);
  const auto x = a.NextU64();
  EXPECT_NE(x, b.NextU64());
  EXPECT_NE(x, c.NextU64());
}

TEST(RngStreamTest, UniformInUnitInterval) {
  RngStream rng(1, 0);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.NextUniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 0.005);
}

TEST(RngStreamTest, NextBelowCoversRangeUniformly) {
  RngStream rng(3, 1);
  std::vector<int> hist(6, 0);
  const int n = 60000;
  for (int i = 0; i < n; ++i) ++hist[rng.NextBelow(6)];
  for (int h : hist) EXPECT_NEAR(h, n / 6, 400);
}

TEST(SampleChannelTest, Deterministic) {
  RngStream a(9, 3), b(9, 3);
  EXPECT_EQ(SampleChannel(a, 4, 16).h, SampleChannel(b, 4, 16).h);
}

TEST(SampleChannelTest, UnitAveragePower) {
  RngStream rng(5, 0);
  double power = 0.0;
  long count = 0;
  for (int t = 0; t < 10000; ++t) {
    const ChannelRealization ch = SampleChannel(rng, 4, 64);
    power += ch.h.squaredNorm();
    count += ch.h.size();
  }
  const double mean = power / count;
  EXPECT_GE(mean, 0.98);
  EXPECT_LE(mean, 1.02);
}

TEST(SampleChannelTest, PartsUncorrelatedAndHalfVariance) {
  RngStream rng(6, 0);
  const int n = 100000;
  double sr = 0, si = 0, srr = 0, sii = 0, sri = 0;
  for (int t = 0; t < n; ++t) {
    const Complex z = SampleChannel(rng, 1, 1).h(0, 0);
    sr += z.real();
    si += z.imag();
    srr += z.real() * z.real();
    sii += z.imag() * z.imag();
    sri += z.real() * z.imag();
  }
  const double mr = sr / n, mi = si / n;
  const double vr = srr / n - mr * mr, vi = sii / n - mi * mi;
  const double corr = (sri / n - mr * mi) / std::sqrt(vr * vi);
  EXPECT_NEAR(mr, 0.0, 0.01);
  EXPECT_NEAR(mi, 0.0, 0.01);
  EXPECT_NEAR(vr, 0.5, 0.01);
  EXPECT_NEAR(vi, 0.5, 0.01);
  EXPECT_GE(corr, -0.02);
  EXPECT_LE(corr, 0.02);
}

TEST(SampleChannelTest, RejectsBadDimensions) {
  RngStream rng(1, 1);
  EXPECT_THROW(SampleChannel(rng, 0, 4), DimensionError);
  EXPECT_THROW(SampleChannel(rng, 2, 0), DimensionError);
}

TEST(SampleNoiseTest, Variance) {
  RngStream rng(11, 0);
  double power = 0.0;
  const int n = 100000;
  for (int t = 0; t < n; ++t) power += SampleNoise(rng, 1, {0.1}).squaredNorm();
  EXPECT_GE(power / n, 0.097);
  EXPECT_LE(power / n, 0.103);
}

TEST(SampleNoiseTest, ReproducibleAndValidated) {
  RngStream a(2, 2), b(2, 2);
  EXPECT_EQ(SampleNoise(a, 3, {0.5}), SampleNoise(b, 3, {0.5}));
  EXPECT_THROW(SampleNoise(a, 3, {0.0}), ParameterError);
  EXPECT_THROW(SampleNoise(a, 3, {-1.0}), ParameterError);
}

TEST(SnrToSigma2Test, Definition) {
  EXPECT_NEAR(SnrToSigma2(10.0).sigma2, 0.1, 1e-15);
  EXPECT_NEAR(SnrToSigma2(0.0).sigma2, 1.0, 1e-15);
  EXPECT_NEAR(SnrToSigma2(20.0, 2.0).sigma2, 0.02, 1e-15);
}

TEST(RealStackTest, Basics) {
  ComplexVector z(1);
  z << Complex(1, 2);
  const RealVector v = RealStack(z);
  ASSERT_EQ(v.size(), 2);
  EXPECT_EQ(v[0], 1.0);
  EXPECT_EQ(v[1], 2.0);
  EXPECT_EQ(RealUnstack(v), z);

  ComplexMatrix h(1, 1);
  h << Complex(0, 1);
  ComplexVector one(1);
  one << 1.0;
  const RealVector prod = RealStackMatrix(h) * RealStack(one);
  EXPECT_EQ(prod[0], 0.0);
  EXPECT_EQ(prod[1], 1.0);
}

TEST(RealStackTest, CommutesWithMultiplication) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    ComplexMatrix h(3, 5);
    ComplexVector z(5);
    for (Eigen::Index i = 0; i < h.size(); ++i) h.data()[i] = {u(gen), u(gen)};
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = {u(gen), u(gen)};
    const RealVector lhs = RealStack(h * z);
    const RealVector rhs = RealStackMatrix(h) * RealStack(z);
    EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12 * 100);
  }
}

}  // namespace
}  // namespace onebit
