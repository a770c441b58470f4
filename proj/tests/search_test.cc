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

#include "nsimplex/search.h"

#include <algorithm>
#include <memory>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "nsimplex/errors.h"
#include "test_util.h"

namespace nsimplex {
namespace {

using ::nsimplex::testing::PreparedData;

std::unique_ptr<SearchIndex> BuildAll(std::shared_ptr<const Dataset> data,
                                      const Metric& metric, std::size_t n,
                                      std::uint64_t seed) {
  auto index = std::make_unique<SearchIndex>(data, metric);
  const PivotSet pivots = SelectRandomPivots(*data, n, seed, metric);
  index->BuildLaesa(pivots);
  if (metric.has_npoint_property()) index->BuildApex(pivots);
  index->BuildTree();
  return index;
}

TEST(MechanismTest, Names) {
  for (Mechanism m : kAllMechanisms) EXPECT_EQ(ParseMechanism(MechanismName(m)), m);
  EXPECT_EQ(MechanismName(Mechanism::kNRei), "nrei");
  EXPECT_FALSE(ParseMechanism("vptree").has_value());
  EXPECT_FALSE(UsesPivots(Mechanism::kScan));
  EXPECT_FALSE(UsesPivots(Mechanism::kTree));
  EXPECT_TRUE(UsesPivots(Mechanism::kLRei));
  EXPECT_TRUE(UsesPivots(Mechanism::kNSeq));
}

class ExactnessTest : public ::testing::TestWithParam<Metric> {};

// Random (q, t) trials on small data: every mechanism equals brute force.
TEST_P(ExactnessTest, NoFalseDismissals) {
  const Metric metric = GetParam();
  auto data = std::make_shared<const Dataset>(PreparedData(metric, 600, 8, 1));
  const Dataset queries = PreparedData(metric, 1000, 8, 2);
  const auto index = BuildAll(data, metric, 6, 3);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> quantile(0.0, 0.05);
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    std::vector<double> d;
    for (std::size_t j = 0; j < data->size(); ++j) d.push_back(metric(queries[qi], (*data)[j]));
    std::sort(d.begin(), d.end());
    const double t = d[static_cast<std::size_t>(quantile(rng) * d.size())];
    const auto truth = BruteForceRange(*data, queries[qi], t, metric);
    for (Mechanism m : kAllMechanisms) {
      if (!index->IsBuilt(m)) continue;
      const QueryResult r = index->ExactRangeQuery(m, queries[qi], t);
      ASSERT_EQ(r.ids, truth) << MechanismName(m) << " query " << qi;
      ASSERT_EQ(r.stats.results, truth.size());
      if (UsesPivots(m)) {
        ASSERT_EQ(r.stats.original_calls, 6u + r.stats.candidates) << MechanismName(m);
        ASSERT_GE(r.stats.confirmed_without_recheck + r.stats.candidates,
                  r.stats.results);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Metrics, ExactnessTest,
                         ::testing::Values(kEuclidean, kCosine, kJensenShannon,
                                           kTriangular, kChebyshev),
                         [](const auto& info) {
                           std::string name(info.param.name());
                           std::erase(name, '-');
                           return name;
                         });

TEST(SearchIndexTest, ZeroThresholdFindsDuplicates) {
  Dataset raw = GenerateUniform(500, 5, 5);
  raw.Append(raw[10]);
  raw.Append(raw[10]);
  auto data = std::make_shared<const Dataset>(std::move(raw));
  const auto index = BuildAll(data, kEuclidean, 4, 6);
  const std::vector<ObjectId> expected{10, 500, 501};
  for (Mechanism m : kAllMechanisms) {
    EXPECT_EQ(index->ExactRangeQuery(m, (*data)[10], 0.0).ids, expected)
        << MechanismName(m);
  }
}

TEST(SearchIndexTest, ScanCountsEveryObject) {
  auto data = std::make_shared<const Dataset>(GenerateUniform(300, 4, 7));
  const SearchIndex index(data, kEuclidean);
  const QueryResult r = index.ExactRangeQuery(Mechanism::kScan, (*data)[0], 0.2);
  EXPECT_EQ(r.stats.original_calls, 300u);
}

TEST(SearchIndexTest, UnbuiltMechanismsAreRejected) {
  auto data = std::make_shared<const Dataset>(GenerateUniform(100, 4, 8));
  const SearchIndex index(data, kEuclidean);
  for (Mechanism m : {Mechanism::kLSeq, Mechanism::kLRei, Mechanism::kNSeq,
                      Mechanism::kNRei, Mechanism::kTree}) {
    EXPECT_FALSE(index.IsBuilt(m));
    EXPECT_THROW(index.ExactRangeQuery(m, (*data)[0], 0.1), UsageError);
  }
  EXPECT_THROW(index.ExactRangeQuery(Mechanism::kScan, (*data)[0], -1), UsageError);
  EXPECT_THROW(SearchIndex(nullptr, kEuclidean), UsageError);
}

TEST(SearchIndexTest, AdoptedTablesServeQueries) {
  auto data = std::make_shared<const Dataset>(GenerateUniform(400, 6, 9));
  const PivotSet pivots = SelectRandomPivots(*data, 5, 10, kEuclidean);
  SearchIndex index(data, kEuclidean);
  index.AdoptLaesa(LaesaTable::Build(*data, pivots, kEuclidean));
  index.AdoptApex(ApexTable::Build(*data, pivots, kEuclidean));
  const auto truth = BruteForceRange(*data, (*data)[3], 0.4, kEuclidean);
  for (Mechanism m : {Mechanism::kLSeq, Mechanism::kLRei, Mechanism::kNSeq,
                      Mechanism::kNRei}) {
    EXPECT_EQ(index.ExactRangeQuery(m, (*data)[3], 0.4).ids, truth);
  }
  const Dataset other = GenerateUniform(10, 6, 11);
  EXPECT_THROW(index.AdoptLaesa(LaesaTable::Build(other, pivots, kEuclidean)),
               DataError);
}

// The apex filter needs no more rechecks than LAESA on structured data.
TEST(SearchIndexTest, ApexRechecksDoNotExceedLaesa) {
  int holds = 0, trials = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Dataset all = GenerateLowRank(3020, 30, 12, seed);
    const Dataset queries = all.Slice(0, 20);
    auto data = std::make_shared<const Dataset>(all.Slice(20, all.size()));
    const auto index = BuildAll(data, kEuclidean, 10, seed);
    double laesa = 0, apex = 0;
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
      std::vector<double> d;
      for (std::size_t j = 0; j < data->size(); ++j) d.push_back(kEuclidean(queries[qi], (*data)[j]));
      std::nth_element(d.begin(), d.begin() + 3, d.end());
      const double t = d[3];
      laesa += index->ExactRangeQuery(Mechanism::kLSeq, queries[qi], t).stats.candidates;
      apex += index->ExactRangeQuery(Mechanism::kNSeq, queries[qi], t).stats.candidates;
    }
    ++trials;
    if (apex <= laesa) ++holds;
  }
  EXPECT_GE(holds, trials * 9 / 10);
}

}  // namespace
}  // namespace nsimplex
