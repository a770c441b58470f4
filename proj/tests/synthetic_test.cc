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

#include "nsimplex/synthetic.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "nsimplex/errors.h"
#include "nsimplex/linalg.h"
#include "nsimplex/metrics.h"

namespace nsimplex {
namespace {

TEST(GenerateUniformTest, DeterministicAndCentred) {
  EXPECT_EQ(GenerateUniform(100, 5, 1), GenerateUniform(100, 5, 1));
  EXPECT_NE(GenerateUniform(100, 5, 1), GenerateUniform(100, 5, 2));
  const Dataset data = GenerateUniform(10000, 30, 3);
  double sum = 0;
  for (double v : data.values()) {
    ASSERT_GE(v, 0.0);
    ASSERT_LT(v, 1.0);
    sum += v;
  }
  const double mean = sum / static_cast<double>(data.values().size());
  EXPECT_GE(mean, 0.49);
  EXPECT_LE(mean, 0.51);
  EXPECT_THROW(GenerateUniform(0, 3, 1), UsageError);
  EXPECT_THROW(GenerateUniform(3, 0, 1), UsageError);
}

TEST(GenerateHistogramsTest, ValidForNonNegativeMetrics) {
  const Dataset data = GenerateHistograms(500, 32, 4);
  EXPECT_EQ(data, GenerateHistograms(500, 32, 4));
  EXPECT_TRUE(ValidateDataset(kJensenShannon, data).empty());
  EXPECT_TRUE(ValidateDataset(kTriangular, data).empty());
  std::size_t zeros = 0;
  for (double v : data.values()) zeros += v == 0.0;
  EXPECT_GT(zeros, 0u);
}

TEST(GenerateLowRankTest, SpectrumDecays) {
  const Dataset data = GenerateLowRank(2000, 20, 8, 5);
  const PrincipalAxes axes = ComputePrincipalAxes(data, 10);
  for (std::size_t i = 1; i < 8; ++i) {
    EXPECT_LT(axes.eigenvalues[i], axes.eigenvalues[i - 1]);
  }
  // Beyond the intrinsic dimension only the noise floor remains.
  EXPECT_LT(axes.eigenvalues[8], 1e-3 * axes.eigenvalues[7]);
  EXPECT_THROW(GenerateLowRank(10, 5, 6, 1), UsageError);
}

TEST(GenerateFlatTest, ExactlyInAFlat) {
  const Dataset data = GenerateFlat(300, 12, 4, 6);
  std::vector<double> mean;
  const std::vector<double> cov = Covariance(data, &mean);
  const SymmetricEigen eig = JacobiEigen(cov, 12);
  EXPECT_GT(eig.values[3], 1e-6);
  EXPECT_LT(eig.values[4], 1e-12 * eig.values[0]);
}

TEST(SyntheticKindTest, Names) {
  EXPECT_EQ(ParseSyntheticKind("uniform"), SyntheticKind::kUniform);
  EXPECT_EQ(ParseSyntheticKind("histogram"), SyntheticKind::kHistogram);
  EXPECT_EQ(ParseSyntheticKind("lowrank"), SyntheticKind::kLowRank);
  EXPECT_FALSE(ParseSyntheticKind("gaussian").has_value());
}

}  // namespace
}  // namespace nsimplex
