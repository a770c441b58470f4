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

#include "nsimplex/eval.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "nsimplex/errors.h"
#include "nsimplex/linalg.h"
#include "nsimplex/simplex.h"
#include "nsimplex/tables.h"

namespace nsimplex {

std::vector<IndexPair> SamplePairs(std::size_t count, std::size_t max_pairs,
                                   std::uint64_t seed) {
  std::vector<IndexPair> pairs;
  if (count < 2) return pairs;
  const double total = 0.5 * static_cast<double>(count) *
                       static_cast<double>(count - 1);
  if (total <= static_cast<double>(max_pairs)) {
    pairs.reserve(static_cast<std::size_t>(total));
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) pairs.push_back({i, j});
    }
    return pairs;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> first(0, count - 1);
  std::uniform_int_distribution<std::size_t> offset(1, count - 1);
  pairs.reserve(max_pairs);
  for (std::size_t k = 0; k < max_pairs; ++k) {
    const std::size_t i = first(rng);
    const std::size_t j = (i + offset(rng)) % count;
    pairs.push_back({i, j});
  }
  return pairs;
}

DistortionReport MeasureDistortion(std::string mapping, int dims,
                                   std::span<const double> true_distances,
                                   std::span<const double> surrogate_distances) {
  if (true_distances.size() != surrogate_distances.size()) {
    throw UsageError("distortion needs one surrogate per true distance");
  }
  DistortionReport report;
  report.mapping = std::move(mapping);
  report.dims = dims;
  report.pairs_sampled = true_distances.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  std::size_t usable = 0;
  for (std::size_t k = 0; k < true_distances.size(); ++k) {
    const double d = true_distances[k];
    const double s = surrogate_distances[k];
    if (d == 0.0 && s == 0.0) {
      ++report.zero_pairs_skipped;
      continue;
    }
    if (d > 0.0) ++usable;
    if (s == 0.0) {
      report.unbounded = true;
      hi = std::numeric_limits<double>::infinity();
      continue;
    }
    const double ratio = d / s;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  if (usable == 0) throw UsageError("no pair with a non-zero true distance");
  if (!std::isfinite(lo)) lo = 0.0;
  report.r = lo;
  if (report.unbounded || lo == 0.0) {
    report.unbounded = true;
    report.distortion = std::numeric_limits<double>::infinity();
  } else {
    report.distortion = hi / lo;
  }
  return report;
}

DistortionReport MeasureDistortion(std::string mapping, int dims,
                                   const PairDistance& true_distance,
                                   const PairDistance& surrogate,
                                   std::span<const IndexPair> pairs) {
  std::vector<double> d(pairs.size());
  std::vector<double> s(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    d[k] = true_distance(pairs[k].first, pairs[k].second);
    s[k] = surrogate(pairs[k].first, pairs[k].second);
  }
  return MeasureDistortion(std::move(mapping), dims, d, s);
}

Dataset JlMatrix(std::size_t k, std::size_t d, std::uint64_t seed) {
  if (k == 0) throw UsageError("projection needs at least one dimension");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(k));
  Dataset map(d);
  map.Reserve(k);
  for (std::size_t r = 0; r < k; ++r) {
    for (double& x : map.AppendZero()) x = gauss(rng) * scale;
  }
  return map;
}

Dataset ApplyLinearMap(const Dataset& data, const Dataset& map,
                       std::span<const double> offset) {
  if (map.dim() != data.dim()) {
    throw DataError("linear map expects dimension " + std::to_string(map.dim()) +
                    ", data has " + std::to_string(data.dim()));
  }
  if (!offset.empty() && offset.size() != data.dim()) {
    throw DataError("offset dimension does not match data");
  }
  Dataset out(map.size());
  out.Reserve(data.size());
  std::vector<double> shifted(data.dim());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto x = data[i];
    for (std::size_t c = 0; c < x.size(); ++c) {
      shifted[c] = offset.empty() ? x[c] : x[c] - offset[c];
    }
    auto y = out.AppendZero();
    for (std::size_t r = 0; r < map.size(); ++r) {
      const auto row = map[r];
      double sum = 0.0;
      for (std::size_t c = 0; c < row.size(); ++c) sum += row[c] * shifted[c];
      y[r] = sum;
    }
  }
  return out;
}

Dataset JlProject(const Dataset& data, std::size_t k, std::uint64_t seed) {
  return ApplyLinearMap(data, JlMatrix(k, data.dim(), seed));
}

Dataset PcaProject(const Dataset& data, std::size_t k) {
  const PrincipalAxes axes = ComputePrincipalAxes(data, k);
  return ApplyLinearMap(data, axes.axes, axes.mean);
}

Dataset NSimplexProject(const Dataset& data, const PivotSet& pivots,
                        const Metric& metric) {
  return ApexTable::Build(data, pivots, metric).rows();
}

std::string_view ReducerName(Reducer reducer) {
  switch (reducer) {
    case Reducer::kNSimplexRandom:
      return "nsimplex-random";
    case Reducer::kNSimplexPca:
      return "nsimplex-pca";
    case Reducer::kPca:
      return "pca";
    case Reducer::kJl:
      return "jl";
  }
  return "unknown";
}

std::optional<Reducer> ParseReducer(std::string_view name) {
  for (Reducer r : {Reducer::kNSimplexRandom, Reducer::kNSimplexPca,
                    Reducer::kPca, Reducer::kJl}) {
    if (ReducerName(r) == name) return r;
  }
  return std::nullopt;
}

namespace {

std::vector<double> PairL2(const Dataset& mapped,
                           std::span<const IndexPair> pairs) {
  std::vector<double> out(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    out[k] = kEuclidean(mapped[pairs[k].first], mapped[pairs[k].second]);
  }
  return out;
}

}  // namespace

std::vector<DistortionReport> CompareReducers(const Dataset& data,
                                              const DistortionConfig& config) {
  const bool euclidean = config.metric.kind() == MetricKind::kEuclidean;
  for (Reducer r : config.reducers) {
    if (!euclidean && r != Reducer::kNSimplexRandom) {
      throw UsageError(std::string(ReducerName(r)) + " requires euclidean data");
    }
  }
  const std::vector<IndexPair> pairs =
      SamplePairs(data.size(), config.max_pairs, config.seed);
  std::vector<double> truth(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    truth[k] = config.metric(data[pairs[k].first], data[pairs[k].second]);
  }

  std::optional<PrincipalAxes> axes;
  const bool wants_pca =
      std::find(config.reducers.begin(), config.reducers.end(), Reducer::kPca) !=
      config.reducers.end();
  if (wants_pca && !config.dims.empty()) {
    axes = ComputePrincipalAxes(
        data, static_cast<std::size_t>(
                  *std::max_element(config.dims.begin(), config.dims.end())));
  }

  std::vector<DistortionReport> reports;
  for (Reducer reducer : config.reducers) {
    for (int dims : config.dims) {
      const auto k = static_cast<std::size_t>(dims);
      Dataset mapped;
      switch (reducer) {
        case Reducer::kNSimplexRandom:
          mapped = NSimplexProject(
              data, SelectRandomPivots(data, k, config.seed, config.metric),
              config.metric);
          break;
        case Reducer::kNSimplexPca:
          mapped = NSimplexProject(
              data,
              SelectPcaPivots(data, k, config.metric, config.pca_placement),
              config.metric);
          break;
        case Reducer::kPca:
          mapped = ApplyLinearMap(data, axes->axes.Slice(0, k), axes->mean);
          break;
        case Reducer::kJl:
          mapped = JlProject(data, k, config.seed);
          break;
      }
      reports.push_back(MeasureDistortion(std::string(ReducerName(reducer)),
                                          dims, truth, PairL2(mapped, pairs)));
      reports.back().pairs_sampled = pairs.size();
    }
  }
  return reports;
}

std::vector<BenchRow> RunBenchmark(const BenchmarkConfig& config) {
  if (!config.data) throw UsageError("benchmark needs a dataset");
  const Dataset& queries = config.queries;
  SearchIndex index(config.data, config.metric);

  const auto wants = [&](Mechanism m) {
    return std::find(config.mechanisms.begin(), config.mechanisms.end(), m) !=
           config.mechanisms.end();
  };
  if (wants(Mechanism::kTree)) index.BuildTree(config.leaf_capacity);

  // Reference result sets per threshold, filled by whichever mechanism runs
  // first and checked against every later one.
  std::vector<std::vector<std::vector<ObjectId>>> reference(
      config.thresholds.size());
  // Rows of pivot-independent mechanisms, keyed by (threshold, mechanism).
  std::map<std::pair<std::size_t, Mechanism>, BenchRow> reusable;

  std::vector<BenchRow> rows;
  for (int dims : config.dims) {
    const bool needs_laesa = wants(Mechanism::kLSeq) || wants(Mechanism::kLRei);
    const bool needs_apex = wants(Mechanism::kNSeq) || wants(Mechanism::kNRei);
    if (needs_laesa || needs_apex) {
      const auto n = static_cast<std::size_t>(dims);
      PivotSet pivots =
          config.pivot_strategy == PivotStrategy::kPca
              ? SelectPcaPivots(*config.data, n, config.metric,
                                config.pca_placement)
              : SelectRandomPivots(*config.data, n, config.seed, config.metric);
      if (needs_laesa) index.BuildLaesa(pivots, config.leaf_capacity);
      if (needs_apex) index.BuildApex(pivots, config.leaf_capacity);
    }

    for (std::size_t ti = 0; ti < config.thresholds.size(); ++ti) {
      const double t = config.thresholds[ti];
      for (Mechanism mechanism : config.mechanisms) {
        if (!UsesPivots(mechanism)) {
          auto it = reusable.find({ti, mechanism});
          if (it != reusable.end()) {
            BenchRow row = it->second;
            row.dims = dims;
            rows.push_back(row);
            continue;
          }
        }
        QueryStats total;
        const auto start = std::chrono::steady_clock::now();
        for (std::size_t qi = 0; qi < queries.size(); ++qi) {
          QueryResult result = index.ExactRangeQuery(mechanism, queries[qi], t);
          total += result.stats;
          auto& expected = reference[ti];
          if (expected.size() <= qi) {
            expected.push_back(std::move(result.ids));
          } else if (expected[qi] != result.ids) {
            std::ostringstream msg;
            msg << "result mismatch: mechanism " << MechanismName(mechanism)
                << " at dims " << dims << ", threshold " << t << ", query "
                << qi << " returned " << result.ids.size() << " ids, expected "
                << expected[qi].size();
            throw InvariantViolation(msg.str());
          }
        }
        const std::chrono::duration<double> elapsed =
            std::chrono::steady_clock::now() - start;
        const double q = queries.empty() ? 1.0 : static_cast<double>(queries.size());
        BenchRow row;
        row.mechanism = std::string(MechanismName(mechanism));
        row.metric = std::string(config.metric.name());
        row.dims = dims;
        row.threshold = t;
        row.queries = queries.size();
        row.mean_original_calls = static_cast<double>(total.original_calls) / q;
        row.mean_surrogate_calls = static_cast<double>(total.surrogate_calls) / q;
        row.mean_results = static_cast<double>(total.results) / q;
        row.mean_candidates = static_cast<double>(total.candidates) / q;
        row.elapsed_seconds = elapsed.count();
        if (!UsesPivots(mechanism)) reusable[{ti, mechanism}] = row;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

}  // namespace nsimplex
