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

#ifndef NSIMPLEX_TABLES_H_
#define NSIMPLEX_TABLES_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nsimplex/dataset.h"
#include "nsimplex/metrics.h"
#include "nsimplex/pivots.h"
#include "nsimplex/simplex.h"

namespace nsimplex {

// Work done by one query. Each query owns its stats; aggregate by summing.
struct QueryStats {
  std::uint64_t original_calls = 0;   // metric evaluations in the data space
  std::uint64_t surrogate_calls = 0;  // row comparisons / re-indexed distances
  std::uint64_t candidates = 0;       // survivors needing an original recheck
  std::uint64_t confirmed_without_recheck = 0;  // upper bound <= t
  std::uint64_t results = 0;
  std::uint64_t nodes_visited = 0;    // tree mechanisms only

  QueryStats& operator+=(const QueryStats& other);
};

// Outcome of a filtering pass. `confirmed` ids are guaranteed results;
// `candidates` may or may not be and must be rechecked.
struct FilterOutcome {
  std::vector<ObjectId> confirmed;
  std::vector<ObjectId> candidates;
  QueryStats stats;
};

// Row j holds d(s_j, p_i) for every pivot i.
class LaesaTable {
 public:
  // Evaluates |data| * n distances (added to *original_calls when given).
  static LaesaTable Build(const Dataset& data, PivotSet pivots,
                          const Metric& metric,
                          std::uint64_t* original_calls = nullptr);
  // Reassembles a table from persisted rows; rows.dim() must equal n.
  static LaesaTable FromRows(PivotSet pivots, Dataset rows);

  const PivotSet& pivots() const { return pivots_; }
  const Dataset& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  std::size_t n() const { return pivots_.size(); }
  ObjectId object_id(std::size_t row) const { return static_cast<ObjectId>(row); }

  // The query's pivot distances; adds n to stats.original_calls.
  std::vector<double> QueryRow(VectorView q, const Metric& metric,
                               QueryStats& stats) const;

 private:
  PivotSet pivots_;
  Dataset rows_;
};

// Row j holds the apex of s_j over the pivots' simplex base.
class ApexTable {
 public:
  // Builds the base from the pivots, then projects every object (|data| * n
  // distances). Throws NonEmbeddable or DegeneratePivots.
  static ApexTable Build(const Dataset& data, PivotSet pivots,
                         const Metric& metric,
                         std::uint64_t* original_calls = nullptr);
  static ApexTable FromRows(SimplexBase base, PivotSet pivots, Dataset rows);

  const SimplexBase& base() const { return base_; }
  const PivotSet& pivots() const { return pivots_; }
  const Dataset& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  std::size_t n() const { return base_.n(); }
  ObjectId object_id(std::size_t row) const { return static_cast<ObjectId>(row); }

  // The query's apex; adds n to stats.original_calls.
  std::vector<double> QueryRow(VectorView q, const Metric& metric,
                               QueryStats& stats) const;

 private:
  ApexTable(SimplexBase base, PivotSet pivots, Dataset rows)
      : base_(std::move(base)), pivots_(std::move(pivots)),
        rows_(std::move(rows)) {}

  SimplexBase base_;
  PivotSet pivots_;
  Dataset rows_;
};

// Sequential LAESA: a row survives unless some |d(q, p_i) - row_i| > t; rows
// are abandoned at the first such column. Every survivor is a candidate.
FilterOutcome LSeqQuery(const LaesaTable& table, VectorView q, double t,
                        const Metric& metric);
// Same scan given precomputed query pivot distances (no original calls).
FilterOutcome LSeqScan(const LaesaTable& table, std::span<const double> query_row,
                       double t);

// Sequential n-simplex: squared coordinate differences accumulate and the row
// is abandoned once the sum exceeds t^2. Surviving rows whose upper bound is
// <= t are confirmed; the rest are candidates.
FilterOutcome NSeqQuery(const ApexTable& table, VectorView q, double t,
                        const Metric& metric);
FilterOutcome NSeqScan(const ApexTable& table, std::span<const double> query_apex,
                       double t);

// Splits lower-bound survivors by their upper bound, as NSeqScan does.
void ClassifyByUpperBound(const ApexTable& table,
                          std::span<const double> query_apex,
                          std::span<const ObjectId> survivors, double t,
                          FilterOutcome& outcome);

// Evaluates the original metric once per candidate and returns the exact
// result ids (confirmed plus passing candidates), sorted ascending.
std::vector<ObjectId> Recheck(const Dataset& data, VectorView q, double t,
                              const Metric& metric, FilterOutcome& outcome);

}  // namespace nsimplex

#endif  // NSIMPLEX_TABLES_H_
