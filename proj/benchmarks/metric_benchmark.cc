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

#include <cstdint>

#include "benchmark/benchmark.h"
#include "nsimplex/dataset.h"
#include "nsimplex/metrics.h"
#include "nsimplex/synthetic.h"

namespace nsimplex {
namespace {

void RunMetric(benchmark::State& state, const Metric& metric) {
  const auto dims = static_cast<std::size_t>(state.range(0));
  const Dataset data = PrepareDataset(metric, GenerateHistograms(256, dims, 7));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(metric(data[i % 256], data[(i + 1) % 256]));
    ++i;
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_Euclidean(benchmark::State& state) { RunMetric(state, kEuclidean); }
void BM_Cosine(benchmark::State& state) { RunMetric(state, kCosine); }
void BM_JensenShannon(benchmark::State& state) { RunMetric(state, kJensenShannon); }
void BM_Triangular(benchmark::State& state) { RunMetric(state, kTriangular); }
void BM_Chebyshev(benchmark::State& state) { RunMetric(state, kChebyshev); }

BENCHMARK(BM_Euclidean)->Arg(20)->Arg(112);
BENCHMARK(BM_Cosine)->Arg(20)->Arg(112);
BENCHMARK(BM_JensenShannon)->Arg(20)->Arg(112);
BENCHMARK(BM_Triangular)->Arg(20)->Arg(112);
BENCHMARK(BM_Chebyshev)->Arg(20)->Arg(112);

}  // namespace
}  // namespace nsimplex
