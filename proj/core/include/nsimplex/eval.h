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

#ifndef NSIMPLEX_EVAL_H_
#define NSIMPLEX_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "nsimplex/dataset.h"
#include "nsimplex/metrics.h"
#include "nsimplex/pivots.h"
#include "nsimplex/search.h"

namespace nsimplex {

// ---------------------------------------------------------------------------
// Distortion.
//
// For a surrogate distance d' standing in for d, the distortion D is the
// smallest factor for which some scale r gives
//     r * d'(i, j) <= d(i, j) <= D * r * d'(i, j)
// over every considered pair, i.e. D = max(d / d') / min(d / d') with
// r = min(d / d').

struct IndexPair {
  std::size_t first;
  std::size_t second;
};

// All unordered pairs when there are at most `max_pairs` of them; otherwise
// `max_pairs` uniformly drawn pairs of distinct indices from a generator
// seeded with `seed`.
std::vector<IndexPair> SamplePairs(std::size_t count, std::size_t max_pairs,
                                   std::uint64_t seed);

inline constexpr std::size_t kDefaultDistortionPairs = 1'000'000;

struct DistortionReport {
  std::string mapping;
  int dims = 0;
  double r = 0.0;           // min d / d'
  double distortion = 1.0;  // max(d / d') / r; +inf when unbounded
  std::size_t pairs_sampled = 0;
  std::size_t zero_pairs_skipped = 0;  // pairs with d = d' = 0
  // Some pair had exactly one of d, d' equal to zero.
  bool unbounded = false;
};

using PairDistance = std::function<double(std::size_t, std::size_t)>;

// Throws UsageError when no pair has d > 0.
DistortionReport MeasureDistortion(std::string mapping, int dims,
                                   std::span<const double> true_distances,
                                   std::span<const double> surrogate_distances);
DistortionReport MeasureDistortion(std::string mapping, int dims,
                                   const PairDistance& true_distance,
                                   const PairDistance& surrogate,
                                   std::span<const IndexPair> pairs);

// ---------------------------------------------------------------------------
// Reduction baselines (Euclidean data only).

// k x d matrix of independent N(0, 1) / sqrt(k) entries.
Dataset JlMatrix(std::size_t k, std::size_t d, std::uint64_t seed);
// Row i of the result is `map` * (data[i] - offset); `offset` may be empty.
Dataset ApplyLinearMap(const Dataset& data, const Dataset& map,
                       std::span<const double> offset = {});
// Johnson-Lindenstrauss random projection to k dimensions.
Dataset JlProject(const Dataset& data, std::size_t k, std::uint64_t seed);
// Mean-centred projection onto the top k principal axes.
Dataset PcaProject(const Dataset& data, std::size_t k);

// Apex coordinates of every object over `pivots` (the n-simplex mapping).
Dataset NSimplexProject(const Dataset& data, const PivotSet& pivots,
                        const Metric& metric);

// Surrogates compared by the distortion harness. Canonical names:
// "nsimplex-random", "nsimplex-pca", "pca", "jl".
enum class Reducer { kNSimplexRandom, kNSimplexPca, kPca, kJl };
std::string_view ReducerName(Reducer reducer);
std::optional<Reducer> ParseReducer(std::string_view name);

struct DistortionConfig {
  Metric metric = kEuclidean;
  std::vector<int> dims;
  std::vector<Reducer> reducers;
  std::size_t max_pairs = kDefaultDistortionPairs;
  std::uint64_t seed = 0;
  PcaPlacement pca_placement = PcaPlacement::kCentredScaled;  // nsimplex-pca
};

// One report per (reducer, dims), reducers outermost. `data` is prepared.
// All reducers see the same pair sample. Non-Euclidean metrics accept only
// kNSimplexRandom (UsageError otherwise).
std::vector<DistortionReport> CompareReducers(const Dataset& data,
                                              const DistortionConfig& config);

// ---------------------------------------------------------------------------
// Benchmark harness.

struct BenchRow {
  std::string mechanism;
  std::string metric;
  int dims = 0;
  double threshold = 0.0;
  std::size_t queries = 0;
  double mean_original_calls = 0.0;
  double mean_surrogate_calls = 0.0;
  double mean_results = 0.0;
  // Mean unconfirmed, unexcluded objects (bounds straddle the threshold).
  double mean_candidates = 0.0;
  double elapsed_seconds = 0.0;  // informational only
};

struct BenchmarkConfig {
  std::shared_ptr<const Dataset> data;  // prepared
  Dataset queries;                      // prepared
  Metric metric = kEuclidean;
  std::vector<double> thresholds;
  std::vector<int> dims;
  std::vector<Mechanism> mechanisms{kAllMechanisms.begin(), kAllMechanisms.end()};
  PivotStrategy pivot_strategy = PivotStrategy::kRandom;
  PcaPlacement pca_placement = PcaPlacement::kCentredScaled;
  std::uint64_t seed = 0;
  std::size_t leaf_capacity = HyperplaneTree::kDefaultLeafCapacity;
};

// Rows ordered by dims, then threshold, then mechanism (config order).
// Mechanisms that ignore pivots (scan, tree) run once per threshold and are
// repeated for every dims value. Every query's result set is compared across
// all mechanisms; any disagreement throws InvariantViolation.
std::vector<BenchRow> RunBenchmark(const BenchmarkConfig& config);

}  // namespace nsimplex

#endif  // NSIMPLEX_EVAL_H_
