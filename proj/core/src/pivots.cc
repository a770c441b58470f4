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

#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "nsimplex/errors.h"
#include "nsimplex/linalg.h"

namespace nsimplex {

std::string_view PivotStrategyName(PivotStrategy strategy) {
  return strategy == PivotStrategy::kPca ? "pca" : "random";
}

std::optional<PivotStrategy> ParsePivotStrategy(std::string_view name) {
  if (name == "random") return PivotStrategy::kRandom;
  if (name == "pca") return PivotStrategy::kPca;
  return std::nullopt;
}

PivotSet PivotSet::Prefix(std::size_t m) const {
  PivotSet out;
  out.points = points.Slice(0, m);
  out.strategy = strategy;
  out.seed = seed;
  if (!indices.empty()) {
    out.indices.assign(indices.begin(), indices.begin() + std::min(m, indices.size()));
  }
  return out;
}

PivotSet SelectRandomPivots(const Dataset& data, std::size_t n,
                            std::uint64_t seed, const Metric& metric) {
  if (n == 0) throw UsageError("need at least one pivot");
  if (n > data.size()) {
    throw UsageError("cannot select " + std::to_string(n) + " pivots from " +
                     std::to_string(data.size()) + " objects");
  }
  constexpr int kMaxAttempts = 100;
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> pool(data.size());
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::iota(pool.begin(), pool.end(), 0);
    // Partial Fisher-Yates: the first n slots become the sample.
    for (std::size_t i = 0; i < n; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    bool distinct = true;
    for (std::size_t i = 0; i < n && distinct; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (metric(data[pool[i]], data[pool[j]]) <= 0.0) {
          distinct = false;
          break;
        }
      }
    }
    if (!distinct) continue;
    PivotSet out;
    out.strategy = PivotStrategy::kRandom;
    out.seed = seed;
    out.indices.assign(pool.begin(), pool.begin() + n);
    out.points = data.Select(out.indices);
    return out;
  }
  throw DataError("could not draw " + std::to_string(n) +
                  " pairwise-distinct pivots in " +
                  std::to_string(kMaxAttempts) + " attempts");
}

std::string_view PcaPlacementName(PcaPlacement placement) {
  return placement == PcaPlacement::kUnitAxes ? "unit" : "scaled";
}

std::optional<PcaPlacement> ParsePcaPlacement(std::string_view name) {
  if (name == "scaled") return PcaPlacement::kCentredScaled;
  if (name == "unit") return PcaPlacement::kUnitAxes;
  return std::nullopt;
}

PivotSet SelectPcaPivots(const Dataset& data, std::size_t n,
                         const Metric& metric, PcaPlacement placement) {
  if (metric.kind() != MetricKind::kEuclidean) {
    throw UsageError("PCA pivots are only defined for euclidean data, not " +
                     std::string(metric.name()));
  }
  if (data.size() < 2) throw DataError("PCA pivots need at least two objects");
  PrincipalAxes axes = ComputePrincipalAxes(data, n);
  PivotSet out;
  out.strategy = PivotStrategy::kPca;
  out.points = std::move(axes.axes);
  if (placement == PcaPlacement::kCentredScaled) {
    for (std::size_t i = 0; i < out.points.size(); ++i) {
      auto row = out.points.mutable_row(i);
      const double sd = std::sqrt(axes.eigenvalues[i]);
      for (std::size_t c = 0; c < row.size(); ++c) {
        row[c] = axes.mean[c] + sd * row[c];
      }
    }
  }
  return out;
}

}  // namespace nsimplex
