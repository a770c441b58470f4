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

#ifndef NSIMPLEX_PIVOTS_H_
#define NSIMPLEX_PIVOTS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "nsimplex/dataset.h"
#include "nsimplex/metrics.h"

namespace nsimplex {

enum class PivotStrategy { kRandom, kPca };

std::string_view PivotStrategyName(PivotStrategy strategy);
std::optional<PivotStrategy> ParsePivotStrategy(std::string_view name);

// The n reference objects a table or simplex base is built from.
struct PivotSet {
  Dataset points;
  PivotStrategy strategy = PivotStrategy::kRandom;
  // Dataset positions of the points; empty for PCA pivots, which are not
  // dataset members.
  std::vector<std::size_t> indices;
  std::uint64_t seed = 0;

  std::size_t size() const { return points.size(); }

  // First m pivots, in order. Indices and seed carry over.
  PivotSet Prefix(std::size_t m) const;
};

// n distinct objects drawn without replacement by a generator seeded with
// `seed`. A draw containing two pivots at distance zero is discarded and
// redrawn, up to 100 attempts; then DataError.
PivotSet SelectRandomPivots(const Dataset& data, std::size_t n,
                            std::uint64_t seed, const Metric& metric);

// Where PCA pivots sit. kCentredScaled puts pivot i at mean + sqrt(lambda_i)
// times axis i, one standard deviation out along each principal axis, which
// keeps the pivots among the data. kUnitAxes uses the unit axes themselves
// as points, with no offset; far from data with a large mean, that simplex
// sees every object at nearly the same distance.
enum class PcaPlacement { kCentredScaled, kUnitAxes };

std::string_view PcaPlacementName(PcaPlacement placement);
std::optional<PcaPlacement> ParsePcaPlacement(std::string_view name);

// Pivots from the top-n principal axes of `data`, placed per `placement`.
// Axes are signed so their largest-magnitude component is positive.
// Euclidean only; throws UsageError for other metrics and DataError on rank
// deficiency.
PivotSet SelectPcaPivots(const Dataset& data, std::size_t n,
                         const Metric& metric,
                         PcaPlacement placement = PcaPlacement::kCentredScaled);

}  // namespace nsimplex

#endif  // NSIMPLEX_PIVOTS_H_
