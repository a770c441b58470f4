// Copyright 2026 The nsimplex Authors.
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

#include "nsimplex/pivots.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "nsimplex/errors.h"
#include "nsimplex/linalg.h"
#include "test_util.h"

namespace nsimplex {
namespace {

using ::nsimplex::testing::GaussianData;
using ::nsimplex::testing::PreparedData;

// Eigenvalues of a symmetric 3x3 matrix from the trigonometric solution of
// its characteristic cubic, descending.
std::vector<double> CubicEigenvalues(const std::vector<double>& a) {
  const double p1 = a[1] * a[1] + a[2] * a[2] + a[5] * a[5];
  const double q = (a[0] + a[4] + a[8]) / 3.0;
  const double p2 = (a[0] - q) * (a[0] - q) + (a[4] - q) * (a[4] - q) +
                    (a[8] - q) * (a[8] - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  std::vector<double> b(9);
  for (int i = 0; i < 9; ++i) b[i] = (a[i] - (i % 4 == 0 ? q : 0.0)) / p;
  const double det = b[0] * (b[4] * b[8] - b[5] * b[7]) -
                     b[1] * (b[3] * b[8] - b[5] * b[6]) +
                     b[2] * (b[3] * b[7] - b[4] * b[6]);
  const double r = std::clamp(det / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  return {e1, 3.0 * q - e1 - e3, e3};
}

TEST(JacobiEigenTest, MatchesClosedFormCubicRoots) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Dataset data = GaussianData(40, 3, seed);
    const std::vector<double> cov = Covariance(data);
    const SymmetricEigen eig = JacobiEigen(cov, 3);
    const std::vector<double> expected = CubicEigenvalues(cov);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(eig.values[i], expected[i], 1e-8);
  }
}

TEST(JacobiEigenTest, EigenvectorsAreOrthonormalAndSatisfyDefinition) {
  const std::size_t d = 12;
  const Dataset data = GaussianData(200, d, 3);
  const std::vector<double> cov = Covariance(data);
  const SymmetricEigen eig = JacobiEigen(cov, d);
  for (std::size_t i = 0; i < d; ++i) {
    if (i > 0) {
      EXPECT_GE(eig.values[i - 1], eig.values[i]);
    }
    for (std::size_t j = 0; j < d; ++j) {
      double dot = 0;
      for (std::size_t k = 0; k < d; ++k) dot += eig.vectors[i][k] * eig.vectors[j][k];
      EXPECT_NEAR(dot, i == j ? 1.0 : 0.0, 1e-9);
    }
    for (std::size_t r = 0; r < d; ++r) {
      double av = 0;
      for (std::size_t k = 0; k < d; ++k) av += cov[r * d + k] * eig.vectors[i][k];
      EXPECT_NEAR(av, eig.values[i] * eig.vectors[i][r], 1e-9);
    }
  }
}

TEST(CovarianceTest, UsesUnbiasedNormalisation) {
  const Dataset data(1, {1.0, 2.0, 3.0, 4.0});
  std::vector<double> mean;
  const std::vector<double> cov = Covariance(data, &mean);
  EXPECT_DOUBLE_EQ(mean[0], 2.5);
  EXPECT_DOUBLE_EQ(cov[0], 5.0 / 3.0);
}

TEST(RandomPivotsTest, DeterministicAndDistinct) {
  const Dataset data = GenerateUniform(500, 6, 1);
  const PivotSet a = SelectRandomPivots(data, 20, 77, kEuclidean);
  const PivotSet b = SelectRandomPivots(data, 20, 77, kEuclidean);
  EXPECT_EQ(a.indices, b.indices);
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(a.seed, 77u);
  EXPECT_EQ(a.strategy, PivotStrategy::kRandom);
  EXPECT_EQ(std::set<std::size_t>(a.indices.begin(), a.indices.end()).size(), 20u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.points[i][0], data[a.indices[i]][0]);
    for (std::size_t j = 0; j < i; ++j) EXPECT_GT(kEuclidean(a.points[i], a.points[j]), 0);
  }
  const PivotSet c = SelectRandomPivots(data, 20, 78, kEuclidean);
  EXPECT_NE(a.indices, c.indices);
}

TEST(RandomPivotsTest, FullSelectionIsAPermutation) {
  const Dataset data = GenerateUniform(30, 3, 2);
  const PivotSet p = SelectRandomPivots(data, 30, 5, kEuclidean);
  std::vector<std::size_t> sorted = p.indices;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < 30; ++i) EXPECT_EQ(sorted[i], i);
}

TEST(RandomPivotsTest, SmallerSetsArePrefixes) {
  const Dataset data = GenerateUniform(300, 4, 3);
  const PivotSet big = SelectRandomPivots(data, 30, 9, kEuclidean);
  const PivotSet small = SelectRandomPivots(data, 10, 9, kEuclidean);
  EXPECT_EQ(small.indices,
            std::vector<std::size_t>(big.indices.begin(), big.indices.begin() + 10));
  EXPECT_EQ(big.Prefix(10).points, small.points);
}

TEST(RandomPivotsTest, RedrawsAroundDuplicates) {
  // Most draws of two pivots pick two copies of the same point and must be
  // redrawn; all 100 attempts failing has probability below 1e-8.
  Dataset data(2);
  for (int i = 0; i < 20; ++i) data.Append(std::vector<double>{0.0, 0.0});
  data.Append(std::vector<double>{1.0, 1.0});
  data.Append(std::vector<double>{2.0, 1.0});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PivotSet p = SelectRandomPivots(data, 2, seed, kEuclidean);
    EXPECT_GT(kEuclidean(p.points[0], p.points[1]), 0.0);
  }
  Dataset same(2);
  for (int i = 0; i < 10; ++i) same.Append(std::vector<double>{1.0, 1.0});
  EXPECT_THROW(SelectRandomPivots(same, 2, 0, kEuclidean), DataError);
  EXPECT_THROW(SelectRandomPivots(same, 11, 0, kEuclidean), UsageError);
  EXPECT_THROW(SelectRandomPivots(same, 0, 0, kEuclidean), UsageError);
}

TEST(PcaPivotsTest, LineDataGivesDiagonalAxis) {
  Dataset data(2);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 50; ++i) {
    const double t = u(rng);
    data.Append(std::vector<double>{t, t});
  }
  const PivotSet p = SelectPcaPivots(data, 1, kEuclidean, PcaPlacement::kUnitAxes);
  EXPECT_EQ(p.strategy, PivotStrategy::kPca);
  EXPECT_TRUE(p.indices.empty());
  EXPECT_NEAR(p.points[0][0], 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(p.points[0][1], 1.0 / std::sqrt(2.0), 1e-12);
}

// Scaled pivots sit one standard deviation from the mean along each axis.
TEST(PcaPivotsTest, ScaledPlacementOffsetsByMeanAndDeviation) {
  const Dataset data = GenerateLowRank(500, 12, 6, 8);
  const PivotSet unit = SelectPcaPivots(data, 4, kEuclidean, PcaPlacement::kUnitAxes);
  const PivotSet scaled = SelectPcaPivots(data, 4, kEuclidean);
  std::vector<double> mean;
  const std::vector<double> cov = Covariance(data, &mean);
  for (std::size_t i = 0; i < 4; ++i) {
    // Variance along the axis: u^T C u.
    double var = 0.0;
    for (std::size_t r = 0; r < 12; ++r) {
      for (std::size_t c = 0; c < 12; ++c) {
        var += unit.points[i][r] * cov[r * 12 + c] * unit.points[i][c];
      }
    }
    for (std::size_t c = 0; c < 12; ++c) {
      EXPECT_NEAR(scaled.points[i][c], mean[c] + std::sqrt(var) * unit.points[i][c],
                  1e-9);
    }
  }
}

TEST(PcaPivotsTest, PlacementNames) {
  EXPECT_EQ(ParsePcaPlacement("scaled"), PcaPlacement::kCentredScaled);
  EXPECT_EQ(ParsePcaPlacement("unit"), PcaPlacement::kUnitAxes);
  EXPECT_FALSE(ParsePcaPlacement("raw").has_value());
  EXPECT_EQ(PcaPlacementName(PcaPlacement::kUnitAxes), "unit");
}

TEST(PcaPivotsTest, OrthonormalWithPositiveLeadingComponent) {
  const Dataset data = GenerateLowRank(400, 16, 10, 5);
  const PivotSet p = SelectPcaPivots(data, 8, kEuclidean, PcaPlacement::kUnitAxes);
  ASSERT_EQ(p.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) {
    const auto row = p.points[i];
    const auto big = std::max_element(row.begin(), row.end(), [](double a, double b) {
      return std::abs(a) < std::abs(b);
    });
    EXPECT_GT(*big, 0.0);
    for (std::size_t j = 0; j < 8; ++j) {
      double dot = 0;
      for (std::size_t k = 0; k < 16; ++k) dot += row[k] * p.points[j][k];
      EXPECT_NEAR(dot, i == j ? 1.0 : 0.0, 1e-9);
    }
  }
}

TEST(PcaPivotsTest, Errors) {
  const Dataset hist = PreparedData(kJensenShannon, 50, 6, 6);
  EXPECT_THROW(SelectPcaPivots(hist, 2, kJensenShannon), UsageError);
  const Dataset flat = GenerateFlat(100, 10, 3, 7);
  EXPECT_NO_THROW(SelectPcaPivots(flat, 3, kEuclidean));
  EXPECT_THROW(SelectPcaPivots(flat, 5, kEuclidean), DataError);
  EXPECT_THROW(SelectPcaPivots(flat, 11, kEuclidean), UsageError);
}

TEST(PivotStrategyTest, Names) {
  EXPECT_EQ(ParsePivotStrategy("random"), PivotStrategy::kRandom);
  EXPECT_EQ(ParsePivotStrategy("pca"), PivotStrategy::kPca);
  EXPECT_FALSE(ParsePivotStrategy("greedy").has_value());
  EXPECT_EQ(PivotStrategyName(PivotStrategy::kPca), "pca");
}

}  // namespace
}  // namespace nsimplex
