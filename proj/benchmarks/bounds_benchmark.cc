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

#include <span>
#include <vector>

#include "benchmark/benchmark.h"
#include "nsimplex/dataset.h"
#include "nsimplex/metrics.h"
#include "nsimplex/pivots.h"
#include "nsimplex/simplex.h"
#include "nsimplex/synthetic.h"
#include "nsimplex/tables.h"

namespace nsimplex {
namespace {

struct Fixture {
  explicit Fixture(std::size_t n)
      : data(GenerateUniform(1024, 30, 11)),
        pivots(SelectRandomPivots(data, n, 5, kEuclidean)),
        table(ApexTable::Build(data, pivots, kEuclidean)) {}
  Dataset data;
  PivotSet pivots;
  ApexTable table;
};

// Both bounds from one pass over the apex coordinates.
void BM_FusedBounds(benchmark::State& state) {
  const Fixture f(static_cast<std::size_t>(state.range(0)));
  const Dataset& rows = f.table.rows();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(FusedBounds(rows[i % 1024], rows[(i + 7) % 1024]));
    ++i;
  }
}

// Plain l2 over the same rows, for comparison with the fused kernel.
void BM_ApexEuclidean(benchmark::State& state) {
  const Fixture f(static_cast<std::size_t>(state.range(0)));
  const Dataset& rows = f.table.rows();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kEuclidean(rows[i % 1024], rows[(i + 7) % 1024]));
    ++i;
  }
}

// Apex placement from precomputed pivot distances.
void BM_AddApex(benchmark::State& state) {
  const Fixture f(static_cast<std::size_t>(state.range(0)));
  const std::size_t n = f.pivots.size();
  std::vector<double> distances(1024 * n);
  for (std::size_t j = 0; j < 1024; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      distances[j * n + i] = kEuclidean(f.data[j], f.pivots.points[i]);
    }
  }
  std::vector<double> out(n);
  std::size_t j = 0;
  for (auto _ : state) {
    f.table.base().AddApexInto(
        std::span<const double>(distances).subspan((j % 1024) * n, n), out);
    benchmark::DoNotOptimize(out.data());
    ++j;
  }
}

BENCHMARK(BM_FusedBounds)->Arg(4)->Arg(10)->Arg(20);
BENCHMARK(BM_ApexEuclidean)->Arg(4)->Arg(10)->Arg(20);
BENCHMARK(BM_AddApex)->Arg(4)->Arg(10)->Arg(20);

}  // namespace
}  // namespace nsimplex
