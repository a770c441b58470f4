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

#include "nsimplex/simplex.h"

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "nsimplex/errors.h"
#include "nsimplex/pivots.h"
#include "test_util.h"

namespace nsimplex {
namespace {

using ::nsimplex::testing::GaussianData;
using ::nsimplex::testing::kSupermetrics;
using ::nsimplex::testing::L2;
using ::nsimplex::testing::PreparedData;
using ::nsimplex::testing::RelativeError;

std::vector<double> DistanceMatrix(const Dataset& points, const Metric& metric) {
  const std::size_t n = points.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) d[i * n + j] = metric(points[i], points[j]);
    }
  }
  return d;
}

// Distance from apex coordinates to base row i zero-extended.
double DistanceToVertex(const SimplexBase& base, std::span<const double> apex,
                        std::size_t i) {
  std::vector<double> v = base.VertexApexCoords(i);
  return L2(v, apex);
}

TEST(SimplexBaseTest, TwoPoints) {
  const std::vector<double> d{0, 3, 3, 0};
  const SimplexBase base = SimplexBase::Build(2, d);
  ASSERT_EQ(base.n(), 2u);
  EXPECT_EQ(base.row(0)[0], 0.0);
  EXPECT_EQ(base.row(1)[0], 3.0);
}

TEST(SimplexBaseTest, EquilateralTriangle) {
  const std::vector<double> d{0, 1, 1, 1, 0, 1, 1, 1, 0};
  const SimplexBase base = SimplexBase::Build(3, d);
  EXPECT_EQ(base.row(0)[0], 0.0);
  EXPECT_EQ(base.row(0)[1], 0.0);
  EXPECT_DOUBLE_EQ(base.row(1)[0], 1.0);
  EXPECT_EQ(base.row(1)[1], 0.0);
  EXPECT_NEAR(base.row(2)[0], 0.5, 1e-15);
  EXPECT_NEAR(base.row(2)[1], std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_NEAR(base.min_altitude(), std::sqrt(3.0) / 2.0, 1e-15);
}

TEST(SimplexBaseTest, SinglePivot) {
  const std::vector<double> d{0};
  const SimplexBase base = SimplexBase::Build(1, d);
  EXPECT_EQ(base.row(0).size(), 0u);
  const Apex a = base.AddApex(std::vector<double>{2.5});
  const Apex b = base.AddApex(std::vector<double>{1.0});
  ASSERT_EQ(a.dims(), 1u);
  EXPECT_EQ(a.coords()[0], 2.5);
  EXPECT_DOUBLE_EQ(LowerBound(a, b), 1.5);
  EXPECT_DOUBLE_EQ(UpperBound(a, b), 3.5);
}

TEST(SimplexBaseTest, ReproducesEuclideanDistances) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Dataset points = GaussianData(5, 4, seed);
    const std::vector<double> d = DistanceMatrix(points, kEuclidean);
    const SimplexBase base = SimplexBase::Build(5, d);
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        if (j >= i) {
          EXPECT_EQ(base.row(i)[j], 0.0);
        }
      }
      if (i >= 1) {
        EXPECT_GE(base.row(i)[i - 1], 0.0);
      }
      for (std::size_t k = 0; k < 5; ++k) {
        EXPECT_LE(RelativeError(L2(base.row(i), base.row(k)), d[i * 5 + k]), 1e-9);
      }
    }
  }
}

TEST(SimplexBaseTest, ReproducesSupermetricDistances) {
  for (Metric m : kSupermetrics) {
    const Dataset points = PreparedData(m, 12, 20, 7);
    const std::vector<double> d = DistanceMatrix(points, m);
    const SimplexBase base = SimplexBase::Build(12, d);
    for (std::size_t i = 0; i < 12; ++i) {
      for (std::size_t k = 0; k < 12; ++k) {
        EXPECT_LE(RelativeError(L2(base.row(i), base.row(k)), d[i * 12 + k]), 1e-9)
            << m.name();
      }
    }
  }
}

// Equilateral base of side 2 with a fourth point at distance 1 from each
// vertex: the circumradius 2/sqrt(3) exceeds 1.
TEST(SimplexBaseTest, CounterexampleIsNonEmbeddable) {
  const std::vector<double> d{0, 2, 2, 1,  //
                              2, 0, 2, 1,  //
                              2, 2, 0, 1,  //
                              1, 1, 1, 0};
  EXPECT_THROW(SimplexBase::Build(4, d), NonEmbeddable);
  const std::vector<double> triangle{0, 2, 2, 2, 0, 2, 2, 2, 0};
  const SimplexBase base = SimplexBase::Build(3, triangle);
  EXPECT_THROW(base.AddApex(std::vector<double>{1, 1, 1}), NonEmbeddable);
}

TEST(SimplexBaseTest, RejectsDegeneratePivots) {
  // Collinear third point.
  const std::vector<double> collinear{0, 1, 2, 1, 0, 1, 2, 1, 0};
  try {
    SimplexBase::Build(3, collinear);
    FAIL() << "expected DegeneratePivots";
  } catch (const DegeneratePivots& e) {
    EXPECT_EQ(e.pivot_index(), 2u);
  }
  // Duplicate pivot.
  const std::vector<double> duplicate{0, 1, 1, 1, 0, 0, 1, 0, 0};
  EXPECT_THROW(SimplexBase::Build(3, duplicate), DegeneratePivots);
}

TEST(SimplexBaseTest, RejectsMalformedMatrices) {
  const std::vector<double> asymmetric{0, 1, 2, 0};
  EXPECT_THROW(SimplexBase::Build(2, asymmetric), DataError);
  const std::vector<double> diagonal{1, 1, 1, 0};
  EXPECT_THROW(SimplexBase::Build(2, diagonal), DataError);
  const std::vector<double> short_matrix{0, 1, 1};
  EXPECT_THROW(SimplexBase::Build(2, short_matrix), DataError);
  EXPECT_THROW(SimplexBase::Build(0, {}), UsageError);
}

TEST(SimplexBaseTest, RejectsMetricsWithoutNPointProperty) {
  EXPECT_THROW(SimplexBase::FromPivots(GaussianData(3, 3, 1), kChebyshev),
               UsageError);
}

TEST(AddApexTest, HandCases) {
  const SimplexBase unit = SimplexBase::Build(2, std::vector<double>{0, 1, 1, 0});
  const Apex a = unit.AddApex(std::vector<double>{1, 1});
  EXPECT_NEAR(a.coords()[0], 0.5, 1e-15);
  EXPECT_NEAR(a.coords()[1], std::sqrt(3.0) / 2.0, 1e-15);

  const SimplexBase two = SimplexBase::Build(2, std::vector<double>{0, 2, 2, 0});
  const Apex v = two.AddApex(std::vector<double>{2, 0});
  EXPECT_DOUBLE_EQ(v.coords()[0], 2.0);
  EXPECT_EQ(v.altitude(), 0.0);
}

TEST(AddApexTest, RejectsBadDistances) {
  const SimplexBase base = SimplexBase::Build(2, std::vector<double>{0, 1, 1, 0});
  EXPECT_THROW(base.AddApex(std::vector<double>{1}), DataError);
  EXPECT_THROW(base.AddApex(std::vector<double>{1, -1}), DataError);
}

TEST(AddApexTest, FeasibleForRandomEuclideanPoints) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const Dataset points = GaussianData(4, 5, rng());
    const Dataset pivots = points.Slice(0, 3);
    const SimplexBase base = SimplexBase::FromPivots(pivots, kEuclidean);
    std::vector<double> delta(3);
    for (std::size_t i = 0; i < 3; ++i) delta[i] = L2(points[3], pivots[i]);
    const Apex apex = base.AddApex(delta);
    EXPECT_GE(apex.altitude(), 0.0);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_LE(RelativeError(DistanceToVertex(base, apex.coords(), i), delta[i]),
                1e-9);
    }
  }
}

TEST(ProjectTest, VerticesProjectOntoThemselves) {
  const Dataset pivots = GaussianData(6, 10, 3);
  const SimplexBase base = SimplexBase::FromPivots(pivots, kEuclidean);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const Apex apex = Project(base, pivots, pivots[i], kEuclidean);
    const std::vector<double> vertex = base.VertexApexCoords(i);
    for (std::size_t k = 0; k < vertex.size(); ++k) {
      EXPECT_NEAR(apex.coords()[k], vertex[k], 1e-9);
    }
    EXPECT_NEAR(apex.altitude(), 0.0, 1e-9);
  }
}

TEST(ProjectTest, CountsOriginalCalls) {
  const Dataset data = GaussianData(11, 12, 4);
  const Dataset pivots = data.Slice(0, 10);
  const SimplexBase base = SimplexBase::FromPivots(pivots, kEuclidean);
  std::uint64_t calls = 0;
  Project(base, pivots, data[10], kEuclidean, &calls);
  EXPECT_EQ(calls, 10u);
}

TEST(ProjectTest, ObjectsInPivotFlatHaveZeroAltitude) {
  const Dataset data = GaussianData(50, 8, 5);
  const Dataset pivots = data.Slice(0, 9);
  const SimplexBase base = SimplexBase::FromPivots(pivots, kEuclidean);
  for (std::size_t i = 9; i < data.size(); ++i) {
    EXPECT_LE(Project(base, pivots, data[i], kEuclidean).altitude(), 1e-7);
  }
}

TEST(BoundsTest, IdentityCases) {
  const Dataset data = GaussianData(30, 6, 6);
  const Dataset pivots = data.Slice(0, 4);
  const SimplexBase base = SimplexBase::FromPivots(pivots, kEuclidean);
  const Apex a = Project(base, pivots, data[20], kEuclidean);
  EXPECT_EQ(LowerBound(a, a), 0.0);
  EXPECT_NEAR(UpperBound(a, a), 2.0 * a.altitude(), 1e-12);
  EXPECT_NEAR(MeanEstimate(a, a), a.altitude(), 1e-12);
  EXPECT_GT(a.altitude(), 0.0);

  const Apex v = Project(base, pivots, pivots[1], kEuclidean);
  const Apex w = Project(base, pivots, pivots[2], kEuclidean);
  const Bounds b = FusedBounds(v, w);
  EXPECT_NEAR(b.lower, b.upper, 1e-9);
  EXPECT_NEAR(MeanEstimate(v, w), b.lower, 1e-9);
}

TEST(BoundsTest, RejectsDifferentBases) {
  const Dataset data = GaussianData(10, 4, 8);
  const SimplexBase b1 = SimplexBase::FromPivots(data.Slice(0, 3), kEuclidean);
  const SimplexBase b2 = SimplexBase::FromPivots(data.Slice(0, 3), kEuclidean);
  const Apex a = Project(b1, data.Slice(0, 3), data[5], kEuclidean);
  const Apex b = Project(b2, data.Slice(0, 3), data[6], kEuclidean);
  EXPECT_THROW(LowerBound(a, b), UsageError);
  EXPECT_THROW(UpperBound(a, b), UsageError);
  EXPECT_THROW(MeanEstimate(a, b), UsageError);
}

TEST(BoundsTest, FusedKernelUsesNPlusOneTerms) {
  for (std::size_t n : {1u, 2u, 5u, 20u}) {
    std::vector<double> a(n, 0.5), b(n, 0.25);
    std::size_t terms = 0;
    FusedBoundsCounted(a, b, [&] { ++terms; });
    EXPECT_EQ(terms, n + 1);
  }
}

class SandwichTest : public ::testing::TestWithParam<Metric> {};

TEST_P(SandwichTest, BoundsBracketTrueDistance) {
  const Metric m = GetParam();
  const Dataset data = PreparedData(m, 400, 24, 21);
  const PivotSet pivots = SelectRandomPivots(data, 8, 22, m);
  const SimplexBase base = SimplexBase::FromPivots(pivots.points, m);
  std::vector<Apex> apexes;
  for (std::size_t i = 0; i < data.size(); ++i) {
    apexes.push_back(Project(base, pivots.points, data[i], m));
  }
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
  for (int trial = 0; trial < 20000; ++trial) {
    const std::size_t i = pick(rng), j = pick(rng);
    const double d = m(data[i], data[j]);
    const Bounds b = FusedBounds(apexes[i], apexes[j]);
    ASSERT_LE(b.lower, d + 1e-9);
    ASSERT_GE(b.upper, d - 1e-9);
    ASSERT_LE(b.lower, b.upper);
  }
}

TEST_P(SandwichTest, LowerBoundSatisfiesTriangleInequality) {
  const Metric m = GetParam();
  const Dataset data = PreparedData(m, 300, 16, 31);
  const PivotSet pivots = SelectRandomPivots(data, 6, 32, m);
  const SimplexBase base = SimplexBase::FromPivots(pivots.points, m);
  std::vector<Apex> apexes;
  for (std::size_t i = 0; i < data.size(); ++i) {
    apexes.push_back(Project(base, pivots.points, data[i], m));
  }
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
  for (int trial = 0; trial < 10000; ++trial) {
    const Apex& a = apexes[pick(rng)];
    const Apex& b = apexes[pick(rng)];
    const Apex& c = apexes[pick(rng)];
    ASSERT_LE(LowerBound(a, c), LowerBound(a, b) + LowerBound(b, c) + 1e-12);
  }
}

TEST_P(SandwichTest, PrefixBoundsAreMonotone) {
  const Metric m = GetParam();
  const Dataset data = PreparedData(m, 60, 24, 41);
  const PivotSet all = SelectRandomPivots(data, 12, 42, m);
  std::vector<std::vector<Apex>> by_prefix;
  for (std::size_t k = 1; k <= all.size(); ++k) {
    const PivotSet prefix = all.Prefix(k);
    const SimplexBase base = SimplexBase::FromPivots(prefix.points, m);
    auto& apexes = by_prefix.emplace_back();
    for (std::size_t i = 0; i < data.size(); ++i) {
      apexes.push_back(Project(base, prefix.points, data[i], m));
    }
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = i + 1; j < data.size(); ++j) {
      for (std::size_t k = 1; k < by_prefix.size(); ++k) {
        const Bounds prev = FusedBounds(by_prefix[k - 1][i], by_prefix[k - 1][j]);
        const Bounds next = FusedBounds(by_prefix[k][i], by_prefix[k][j]);
        ASSERT_GE(next.lower, prev.lower - 1e-9);
        ASSERT_LE(next.upper, prev.upper + 1e-9);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Supermetrics, SandwichTest,
                         ::testing::ValuesIn(kSupermetrics),
                         [](const auto& info) {
                           std::string name(info.param.name());
                           std::erase(name, '-');
                           return name;
                         });

}  // namespace
}  // namespace nsimplex
