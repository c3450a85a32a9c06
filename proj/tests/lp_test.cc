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

#include "onebit/lp.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "onebit/errors.h"
#include "random_lp.h"

namespace onebit {
namespace {

TEST(SolveLpTest, BoxMaximum) {
  LinearProgram lp(2);
  lp.objective = {1.0, 1.0};
  lp.upper = {1.0, 1.0};
  const LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective_value, 2.0, 1e-12);
  EXPECT_NEAR(s.v[0], 1.0, 1e-12);
  EXPECT_NEAR(s.v[1], 1.0, 1e-12);
}

TEST(SolveLpTest, ContradictoryRowIsInfeasible) {
  LinearProgram lp(1);
  lp.objective = {1.0};
  lp.AddRow({1.0}, Relation::kLessEqual, -1.0);
  EXPECT_EQ(SolveLp(lp).status, LpStatus::kInfeasible);
}

TEST(SolveLpTest, OpenDirectionIsUnbounded) {
  LinearProgram lp(2);
  lp.objective = {1.0, 0.0};
  lp.AddRow({1.0, -1.0}, Relation::kLessEqual, 1.0);
  EXPECT_EQ(SolveLp(lp).status, LpStatus::kUnbounded);
}

TEST(SolveLpTest, TextbookProblem) {
  // max 3a + 5b, a <= 4, 2b <= 12, 3a + 2b <= 18.
  LinearProgram lp(2);
  lp.objective = {3.0, 5.0};
  lp.AddRow({1.0, 0.0}, Relation::kLessEqual, 4.0);
  lp.AddRow({0.0, 2.0}, Relation::kLessEqual, 12.0);
  lp.AddRow({3.0, 2.0}, Relation::kLessEqual, 18.0);
  const LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective_value, 36.0, 1e-9);
  EXPECT_NEAR(s.v[0], 2.0, 1e-9);
  EXPECT_NEAR(s.v[1], 6.0, 1e-9);
  EXPECT_GT(s.iterations, 0);
  EXPECT_GT(s.mult_count, 0u);
}

TEST(SolveLpTest, EqualityAndFreeVariables) {
  // max -a - b s.t. a - b = 3, a free, b free, a + b >= -1.
  LinearProgram lp(2);
  lp.objective = {-1.0, -1.0};
  lp.lower = {-kInfinity, -kInfinity};
  lp.AddRow({1.0, -1.0}, Relation::kEqual, 3.0);
  lp.AddRow({1.0, 1.0}, Relation::kGreaterEqual, -1.0);
  const LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective_value, 1.0, 1e-9);
  EXPECT_NEAR(s.v[0] - s.v[1], 3.0, 1e-9);
}

TEST(SolveLpTest, ValidatesInput) {
  LinearProgram lp(2);
  lp.objective = {1.0};
  EXPECT_THROW(SolveLp(lp), DimensionError);
  LinearProgram bad_bounds(1);
  bad_bounds.lower = {2.0};
  bad_bounds.upper = {1.0};
  EXPECT_THROW(SolveLp(bad_bounds), ParameterError);
  LinearProgram short_row(2);
  short_row.AddRow({1.0}, Relation::kLessEqual, 1.0);
  EXPECT_THROW(SolveLp(short_row), DimensionError);
}

TEST(SolveLpTest, MatchesVertexEnumeration) {
  std::mt19937_64 gen(2024);
  int counts[3] = {0, 0, 0};
  for (int t = 0; t < 300; ++t) {
    const testing::LpCase c = testing::RandomLpCase(gen);
    ++counts[static_cast<int>(c.expected)];
    const LpSolution s = SolveLp(c.lp);
    std::string why;
    EXPECT_TRUE(testing::Matches(c, s, &why)) << "case " << t << ": " << why;
    if (s.status == LpStatus::kOptimal) {
      EXPECT_LE(MaxViolation(c.lp, s.v), 1e-7 * 10);
    }
  }
  // The generator must exercise every outcome.
  EXPECT_GT(counts[0], 50);
  EXPECT_GT(counts[1], 10);
  EXPECT_GT(counts[2], 10);
}

TEST(SolveLpTest, WeakDualityAgainstSampledFeasiblePoints) {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const testing::LpCase c = testing::RandomLpCase(gen);
    if (c.expected != testing::Expected::kOptimal) continue;
    bool boxed = true;
    for (int j = 0; j < c.lp.n_vars; ++j) {
      boxed = boxed && std::isfinite(c.lp.lower[j]) && std::isfinite(c.lp.upper[j]);
    }
    if (!boxed) continue;
    const LpSolution s = SolveLp(c.lp);
    ASSERT_EQ(s.status, LpStatus::kOptimal);
    for (int draw = 0; draw < 2000; ++draw) {
      std::vector<double> v(c.lp.n_vars);
      for (int j = 0; j < c.lp.n_vars; ++j) {
        v[j] = c.lp.lower[j] + u(gen) * (c.lp.upper[j] - c.lp.lower[j]);
      }
      if (MaxViolation(c.lp, v) > 0.0) continue;
      double val = 0.0;
      for (int j = 0; j < c.lp.n_vars; ++j) val += c.lp.objective[j] * v[j];
      EXPECT_LE(val, s.objective_value + 1e-6);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(SolveLpTest, RowAndColumnPermutationInvariance) {
  std::mt19937_64 gen(5);
  for (int t = 0; t < 100; ++t) {
    const testing::LpCase c = testing::RandomLpCase(gen);
    if (c.expected != testing::Expected::kOptimal) continue;
    const LpSolution base = SolveLp(c.lp);
    ASSERT_EQ(base.status, LpStatus::kOptimal);

    std::vector<int> perm(c.lp.n_vars);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    LinearProgram shuffled(c.lp.n_vars);
    for (int j = 0; j < c.lp.n_vars; ++j) {
      shuffled.objective[j] = c.lp.objective[perm[j]];
      shuffled.lower[j] = c.lp.lower[perm[j]];
      shuffled.upper[j] = c.lp.upper[perm[j]];
    }
    std::vector<LpRow> rows = c.lp.rows;
    std::shuffle(rows.begin(), rows.end(), gen);
    for (const LpRow& r : rows) {
      std::vector<double> a(c.lp.n_vars);
      for (int j = 0; j < c.lp.n_vars; ++j) a[j] = r.coeffs[perm[j]];
      shuffled.AddRow(std::move(a), r.rel, r.rhs);
    }
    const LpSolution other = SolveLp(shuffled);
    ASSERT_EQ(other.status, LpStatus::kOptimal);
    EXPECT_NEAR(other.objective_value, base.objective_value,
                1e-9 * (1 + std::abs(base.objective_value)));
  }
}

TEST(SolveLpTest, DegenerateCyclingCandidateTerminates) {
  // Beale's example: cycles under textbook Dantzig pricing.
  LinearProgram lp(4);
  lp.objective = {0.75, -150.0, 0.02, -6.0};
  lp.AddRow({0.25, -60.0, -0.04, 9.0}, Relation::kLessEqual, 0.0);
  lp.AddRow({0.5, -90.0, -0.02, 3.0}, Relation::kLessEqual, 0.0);
  lp.AddRow({0.0, 0.0, 1.0, 0.0}, Relation::kLessEqual, 1.0);
  const LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective_value, 0.05, 1e-9);
}

}  // namespace
}  // namespace onebit
