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

#include <memory>

#include "benchmark/benchmark.h"
#include "nsimplex/dataset.h"
#include "nsimplex/metrics.h"
#include "nsimplex/pivots.h"
#include "nsimplex/search.h"
#include "nsimplex/synthetic.h"

namespace nsimplex {
namespace {

constexpr double kThreshold = 0.7269;

// 9000 data and 1000 queries, uniform in [0,1]^30.
const SearchIndex& SharedIndex() {
  static const SearchIndex* index = [] {
    auto data = std::make_shared<const Dataset>(GenerateUniform(9000, 30, 21));
    auto* built = new SearchIndex(data, kEuclidean);
    built->BuildLaesa(SelectRandomPivots(*data, 20, 3, kEuclidean));
    built->BuildApex(SelectRandomPivots(*data, 20, 3, kEuclidean));
    built->BuildTree();
    return built;
  }();
  return *index;
}

const Dataset& SharedQueries() {
  static const Dataset queries = GenerateUniform(1000, 30, 22);
  return queries;
}

void BM_RangeQuery(benchmark::State& state) {
  const auto mechanism = kAllMechanisms[static_cast<std::size_t>(state.range(0))];
  const SearchIndex& index = SharedIndex();
  const Dataset& queries = SharedQueries();
  std::size_t i = 0;
  double calls = 0.0;
  for (auto _ : state) {
    const QueryResult r =
        index.ExactRangeQuery(mechanism, queries[i % queries.size()], kThreshold);
    calls += static_cast<double>(r.stats.original_calls);
    benchmark::DoNotOptimize(r.ids.data());
    ++i;
  }
  state.SetLabel(std::string(MechanismName(mechanism)));
  state.counters["original_calls"] =
      benchmark::Counter(calls, benchmark::Counter::kAvgIterations);
}

BENCHMARK(BM_RangeQuery)->DenseRange(0, 5);

}  // namespace
}  // namespace nsimplex
