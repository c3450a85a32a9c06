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

#include "onebit/modem.h"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "onebit/errors.h"

namespace onebit {
namespace {

const char* const kAll[] = {"bpsk", "qpsk", "8psk", "16psk",
                            "16qam", "64qam", "256qam"};

TEST(ConstellationTest, UnitAverageEnergy) {
  for (const char* name : kAll) {
    const Constellation c = ConstellationFromName(name);
    double e = 0.0;
    for (Complex p : c.points()) e += std::norm(p);
    EXPECT_NEAR(e / c.order(), 1.0, 1e-12) << name;
  }
}

TEST(ConstellationTest, Qpsk) {
  const Constellation c = BuildPsk(4);
  EXPECT_EQ(c.bits_per_symbol(), 2);
  bool has_first_quadrant = false;
  for (Complex p : c.points()) {
    EXPECT_NEAR(std::abs(p.real()), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(std::abs(p.imag()), 1 / std::sqrt(2.0), 1e-15);
    if (p.real() > 0 && p.imag() > 0) has_first_quadrant = true;
  }
  EXPECT_TRUE(has_first_quadrant);
}

TEST(ConstellationTest, Bpsk) {
  const Constellation c = BuildPsk(2);
  ASSERT_EQ(c.order(), 2);
  EXPECT_EQ(c.point(0), Complex(1, 0));
  EXPECT_EQ(c.point(1), Complex(-1, 0));
}

TEST(ConstellationTest, EightPskGeometry) {
  const Constellation c = BuildPsk(8);
  double min_gap = 10.0;
  for (int i = 0; i < 8; ++i) {
    EXPECT_NEAR(std::abs(c.point(i)), 1.0, 1e-15);
    for (int j = 0; j < i; ++j) {
      double d = std::abs(std::arg(c.point(i) / c.point(j)));
      min_gap = std::min(min_gap, d);
    }
  }
  EXPECT_NEAR(min_gap, std::numbers::pi / 4, 1e-12);
}

TEST(ConstellationTest, QamLevels) {
  const Constellation c16 = BuildQam(16);
  ASSERT_EQ(c16.levels_per_dim(), 4);
  const double s10 = std::sqrt(10.0);
  EXPECT_NEAR(c16.levels()[0], -3 / s10, 1e-15);
  EXPECT_NEAR(c16.levels()[1], -1 / s10, 1e-15);
  EXPECT_NEAR(c16.levels()[3], 3 / s10, 1e-15);
  double corner = 0.0;
  for (Complex p : c16.points()) corner = std::max(corner, std::abs(p));
  EXPECT_NEAR(corner, std::sqrt(1.8), 1e-12);

  const Constellation c64 = BuildQam(64);
  EXPECT_EQ(c64.levels_per_dim(), 8);
  EXPECT_NEAR(c64.max_level(), 7 / std::sqrt(42.0), 1e-15);
  EXPECT_NEAR(c64.level_spacing(), 2 / std::sqrt(42.0), 1e-15);
}

TEST(ConstellationTest, UnknownNameRejected) {
  EXPECT_THROW(ConstellationFromName("32apsk"), ParameterError);
  EXPECT_THROW(BuildPsk(6), ParameterError);
  EXPECT_THROW(BuildQam(32), ParameterError);
}

TEST(MapBitsTest, RoundTripEveryWord) {
  for (const char* name : kAll) {
    const Constellation c = ConstellationFromName(name);
    for (int idx = 0; idx < c.order(); ++idx) {
      const std::vector<std::uint8_t> bits = DemapIndex(idx, c);
      ASSERT_EQ(static_cast<int>(bits.size()), c.bits_per_symbol());
      EXPECT_EQ(IndexOfBits(bits, c), idx) << name;
      EXPECT_EQ(MapBits(bits, c), c.point(idx));
    }
  }
}

TEST(MapBitsTest, WrongLengthRejected) {
  const Constellation c = BuildPsk(4);
  const std::vector<std::uint8_t> three = {0, 1, 0};
  EXPECT_THROW(MapBits(three, c), ParameterError);
}

int Hamming(std::uint32_t a, std::uint32_t b) { return std::popcount(a ^ b); }

TEST(GrayTest, PskNeighborsDifferInOneBit) {
  for (int m : {4, 8, 16}) {
    const Constellation c = BuildPsk(m);
    for (int i = 0; i < m; ++i) {
      // Find the angular neighbor counter-clockwise.
      int next = -1;
      double best = 10.0;
      for (int j = 0; j < m; ++j) {
        double d = std::arg(c.point(j) / c.point(i));
        if (d > 1e-9 && d < best) {
          best = d;
          next = j;
        }
      }
      ASSERT_GE(next, 0);
      EXPECT_EQ(Hamming(c.label(i), c.label(next)), 1) << m;
    }
  }
}

TEST(GrayTest, QamGridNeighborsDifferInOneBit) {
  for (int m : {16, 64, 256}) {
    const Constellation c = BuildQam(m);
    const double d = c.level_spacing();
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const Complex diff = c.point(j) - c.point(i);
        const bool horiz = std::abs(std::abs(diff.real()) - d) < 1e-9 &&
                           std::abs(diff.imag()) < 1e-9;
        const bool vert = std::abs(std::abs(diff.imag()) - d) < 1e-9 &&
                          std::abs(diff.real()) < 1e-9;
        if (horiz || vert) EXPECT_EQ(Hamming(c.label(i), c.label(j)), 1);
      }
    }
  }
}

TEST(DetectTest, ExactPointsAreFixed) {
  for (const char* name : kAll) {
    const Constellation c = ConstellationFromName(name);
    for (int i = 0; i < c.order(); ++i) EXPECT_EQ(Detect(c.point(i), c), i);
  }
}

TEST(DetectTest, QpskQuadrant) {
  const Constellation c = BuildPsk(4);
  const int idx = Detect(Complex(0.3, -0.1), c);
  EXPECT_GT(c.point(idx).real(), 0);
  EXPECT_LT(c.point(idx).imag(), 0);
}

TEST(DetectTest, PskScaleInvariance) {
  std::mt19937_64 gen(4);
  std::normal_distribution<double> g;
  for (int m : {2, 4, 8, 16}) {
    const Constellation c = BuildPsk(m);
    for (int t = 0; t < 200; ++t) {
      const Complex y(g(gen), g(gen));
      EXPECT_EQ(Detect(y, c), Detect(2.7 * y, c));
    }
  }
}

TEST(DetectTest, NearestPointAgainstBruteForce) {
  std::mt19937_64 gen(8);
  std::normal_distribution<double> g;
  const Constellation c = BuildQam(64);
  for (int t = 0; t < 500; ++t) {
    const Complex y(g(gen), g(gen));
    int best = 0;
    for (int i = 1; i < c.order(); ++i) {
      if (std::abs(y - c.point(i)) < std::abs(y - c.point(best))) best = i;
    }
    EXPECT_EQ(Detect(y, c), best);
  }
}

TEST(CoordinateClassTest, Examples) {
  const Constellation c16 = BuildQam(16);
  const double s10 = std::sqrt(10.0);
  int outer = -1, inner = -1;
  for (int i = 0; i < 16; ++i) {
    if (std::abs(c16.point(i).real() - 3 / s10) < 1e-12) outer = i;
    if (std::abs(c16.point(i).real() + 1 / s10) < 1e-12) inner = i;
  }
  ASSERT_GE(outer, 0);
  ASSERT_GE(inner, 0);
  EXPECT_EQ(CoordinateClassOf(outer, Dimension::kReal, c16), CoordinateClass::kOuter);
  EXPECT_EQ(CoordinateClassOf(inner, Dimension::kReal, c16), CoordinateClass::kInner);
  EXPECT_NEAR(CoordinateLevel(outer, Dimension::kReal, c16), 3 / s10, 1e-15);

  const Constellation c256 = BuildQam(256);
  int top = -1;
  for (int i = 0; i < 256; ++i) {
    if (std::abs(c256.point(i).imag() - 15 / std::sqrt(170.0)) < 1e-12) top = i;
  }
  ASSERT_GE(top, 0);
  EXPECT_EQ(CoordinateClassOf(top, Dimension::kImag, c256), CoordinateClass::kOuter);
  EXPECT_THROW(CoordinateClassOf(0, Dimension::kReal, BuildPsk(8)), UnsupportedError);
}

}  // namespace
}  // namespace onebit
