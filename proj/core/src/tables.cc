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

#include "nsimplex/tables.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "nsimplex/errors.h"

namespace nsimplex {
namespace {

void CheckThreshold(double t) {
  if (!(t >= 0.0)) throw UsageError("threshold must be non-negative");
}

}  // namespace

QueryStats& QueryStats::operator+=(const QueryStats& other) {
  original_calls += other.original_calls;
  surrogate_calls += other.surrogate_calls;
  candidates += other.candidates;
  confirmed_without_recheck += other.confirmed_without_recheck;
  results += other.results;
  nodes_visited += other.nodes_visited;
  return *this;
}

LaesaTable LaesaTable::Build(const Dataset& data, PivotSet pivots,
                             const Metric& metric,
                             std::uint64_t* original_calls) {
  const std::size_t n = pivots.size();
  if (n == 0) throw UsageError("LAESA table needs at least one pivot");
  LaesaTable table;
  table.rows_ = Dataset(n);
  table.rows_.Reserve(data.size());
  for (std::size_t j = 0; j < data.size(); ++j) {
    auto row = table.rows_.AppendZero();
    for (std::size_t i = 0; i < n; ++i) row[i] = metric(data[j], pivots.points[i]);
  }
  if (original_calls != nullptr) *original_calls += data.size() * n;
  table.pivots_ = std::move(pivots);
  return table;
}

LaesaTable LaesaTable::FromRows(PivotSet pivots, Dataset rows) {
  if (rows.dim() != pivots.size()) {
    throw DataError("LAESA rows have " + std::to_string(rows.dim()) +
                    " columns for " + std::to_string(pivots.size()) + " pivots");
  }
  LaesaTable table;
  table.pivots_ = std::move(pivots);
  table.rows_ = std::move(rows);
  return table;
}

std::vector<double> LaesaTable::QueryRow(VectorView q, const Metric& metric,
                                         QueryStats& stats) const {
  std::vector<double> row(n());
  for (std::size_t i = 0; i < n(); ++i) row[i] = metric(q, pivots_.points[i]);
  stats.original_calls += n();
  return row;
}

ApexTable ApexTable::Build(const Dataset& data, PivotSet pivots,
                           const Metric& metric,
                           std::uint64_t* original_calls) {
  SimplexBase base = SimplexBase::FromPivots(pivots.points, metric);
  const std::size_t n = base.n();
  Dataset rows(n);
  rows.Reserve(data.size());
  std::vector<double> distances(n);
  for (std::size_t j = 0; j < data.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      distances[i] = metric(data[j], pivots.points[i]);
    }
    base.AddApexInto(distances, rows.AppendZero());
  }
  if (original_calls != nullptr) *original_calls += data.size() * n;
  return ApexTable(std::move(base), std::move(pivots), std::move(rows));
}

ApexTable ApexTable::FromRows(SimplexBase base, PivotSet pivots, Dataset rows) {
  if (rows.dim() != base.n() || pivots.size() != base.n()) {
    throw DataError("apex rows do not match the simplex base dimension");
  }
  return ApexTable(std::move(base), std::move(pivots), std::move(rows));
}

std::vector<double> ApexTable::QueryRow(VectorView q, const Metric& metric,
                                        QueryStats& stats) const {
  std::vector<double> distances(n());
  for (std::size_t i = 0; i < n(); ++i) distances[i] = metric(q, pivots_.points[i]);
  stats.original_calls += n();
  std::vector<double> apex(n());
  base_.AddApexInto(distances, apex);
  return apex;
}

FilterOutcome LSeqScan(const LaesaTable& table, std::span<const double> query_row,
                       double t) {
  CheckThreshold(t);
  FilterOutcome out;
  const std::size_t n = table.n();
  const double reach = WidenThreshold(t);
  const Dataset& rows = table.rows();
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const auto row = rows[j];
    std::size_t i = 0;
    while (i < n && std::abs(query_row[i] - row[i]) <= reach) ++i;
    if (i == n) out.candidates.push_back(table.object_id(j));
  }
  out.stats.surrogate_calls = rows.size();
  out.stats.candidates = out.candidates.size();
  return out;
}

FilterOutcome LSeqQuery(const LaesaTable& table, VectorView q, double t,
                        const Metric& metric) {
  CheckThreshold(t);
  QueryStats pivot_stats;
  const std::vector<double> query_row = table.QueryRow(q, metric, pivot_stats);
  FilterOutcome out = LSeqScan(table, query_row, t);
  out.stats += pivot_stats;
  return out;
}

FilterOutcome NSeqScan(const ApexTable& table, std::span<const double> query_apex,
                       double t) {
  CheckThreshold(t);
  FilterOutcome out;
  const std::size_t n = table.n();
  const double reach_sq = WidenThreshold(t) * WidenThreshold(t);
  const double confirm_sq = NarrowThreshold(t) * NarrowThreshold(t);
  const double q_alt = query_apex[n - 1];
  const Dataset& rows = table.rows();
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const auto row = rows[j];
    double acc = 0.0;
    std::size_t i = 0;
    for (; i < n; ++i) {
      const double diff = query_apex[i] - row[i];
      acc += diff * diff;
      if (acc > reach_sq) break;
    }
    if (i < n) continue;
    // (x_n + y_n)^2 - (x_n - y_n)^2 = 4 x_n y_n turns the finished lower-bound
    // accumulator into the squared upper bound.
    const double upper_sq = acc + 4.0 * q_alt * row[n - 1];
    if (upper_sq <= confirm_sq) {
      out.confirmed.push_back(table.object_id(j));
    } else {
      out.candidates.push_back(table.object_id(j));
    }
  }
  out.stats.surrogate_calls = rows.size();
  out.stats.candidates = out.candidates.size();
  out.stats.confirmed_without_recheck = out.confirmed.size();
  return out;
}

FilterOutcome NSeqQuery(const ApexTable& table, VectorView q, double t,
                        const Metric& metric) {
  CheckThreshold(t);
  QueryStats pivot_stats;
  const std::vector<double> apex = table.QueryRow(q, metric, pivot_stats);
  FilterOutcome out = NSeqScan(table, apex, t);
  out.stats += pivot_stats;
  return out;
}

void ClassifyByUpperBound(const ApexTable& table,
                          std::span<const double> query_apex,
                          std::span<const ObjectId> survivors, double t,
                          FilterOutcome& outcome) {
  for (ObjectId id : survivors) {
    const Bounds bounds = FusedBounds(query_apex, table.rows()[id]);
    if (bounds.upper <= NarrowThreshold(t)) {
      outcome.confirmed.push_back(id);
    } else {
      outcome.candidates.push_back(id);
    }
  }
  outcome.stats.candidates = outcome.candidates.size();
  outcome.stats.confirmed_without_recheck = outcome.confirmed.size();
}

std::vector<ObjectId> Recheck(const Dataset& data, VectorView q, double t,
                              const Metric& metric, FilterOutcome& outcome) {
  std::vector<ObjectId> results = outcome.confirmed;
  for (ObjectId id : outcome.candidates) {
    if (metric(q, data[id]) <= t) results.push_back(id);
  }
  outcome.stats.original_calls += outcome.candidates.size();
  std::sort(results.begin(), results.end());
  outcome.stats.results = results.size();
  return results;
}

}  // namespace nsimplex
