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

#include <string>

#include "nsimplex/errors.h"

namespace nsimplex {

std::string_view MechanismName(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::kScan:
      return "scan";
    case Mechanism::kLSeq:
      return "lseq";
    case Mechanism::kLRei:
      return "lrei";
    case Mechanism::kNSeq:
      return "nseq";
    case Mechanism::kNRei:
      return "nrei";
    case Mechanism::kTree:
      return "tree";
  }
  return "unknown";
}

std::optional<Mechanism> ParseMechanism(std::string_view name) {
  for (Mechanism m : kAllMechanisms) {
    if (MechanismName(m) == name) return m;
  }
  return std::nullopt;
}

bool UsesPivots(Mechanism mechanism) {
  return mechanism != Mechanism::kScan && mechanism != Mechanism::kTree;
}

SearchIndex::SearchIndex(std::shared_ptr<const Dataset> data, Metric metric)
    : data_(std::move(data)), metric_(metric) {
  if (!data_) throw UsageError("SearchIndex needs a dataset");
}

void SearchIndex::BuildLaesa(PivotSet pivots, std::size_t leaf_capacity) {
  laesa_tree_.reset();
  laesa_ = LaesaTable::Build(*data_, std::move(pivots), metric_);
  laesa_tree_.emplace(laesa_->rows(), kChebyshev, leaf_capacity);
}

void SearchIndex::BuildApex(PivotSet pivots, std::size_t leaf_capacity) {
  apex_tree_.reset();
  apex_ = ApexTable::Build(*data_, std::move(pivots), metric_);
  apex_tree_.emplace(apex_->rows(), kEuclidean, leaf_capacity);
}

void SearchIndex::AdoptLaesa(LaesaTable table, std::size_t leaf_capacity) {
  if (table.size() != data_->size()) {
    throw DataError("LAESA table has " + std::to_string(table.size()) +
                    " rows for a dataset of " + std::to_string(data_->size()));
  }
  laesa_tree_.reset();
  laesa_ = std::move(table);
  laesa_tree_.emplace(laesa_->rows(), kChebyshev, leaf_capacity);
}

void SearchIndex::AdoptApex(ApexTable table, std::size_t leaf_capacity) {
  if (table.size() != data_->size()) {
    throw DataError("apex table has " + std::to_string(table.size()) +
                    " rows for a dataset of " + std::to_string(data_->size()));
  }
  apex_tree_.reset();
  apex_ = std::move(table);
  apex_tree_.emplace(apex_->rows(), kEuclidean, leaf_capacity);
}

void SearchIndex::BuildTree(std::size_t leaf_capacity) {
  tree_.emplace(*data_, metric_, leaf_capacity);
}

bool SearchIndex::IsBuilt(Mechanism mechanism) const {
  switch (mechanism) {
    case Mechanism::kScan:
      return true;
    case Mechanism::kLSeq:
    case Mechanism::kLRei:
      return laesa_.has_value();
    case Mechanism::kNSeq:
    case Mechanism::kNRei:
      return apex_.has_value();
    case Mechanism::kTree:
      return tree_.has_value();
  }
  return false;
}

QueryResult SearchIndex::ExactRangeQuery(Mechanism mechanism, VectorView q,
                                         double t) const {
  if (!IsBuilt(mechanism)) {
    throw UsageError("mechanism " + std::string(MechanismName(mechanism)) +
                     " has not been built");
  }
  if (!(t >= 0.0)) throw UsageError("threshold must be non-negative");
  QueryResult out;
  switch (mechanism) {
    case Mechanism::kScan: {
      out.ids = BruteForceRange(*data_, q, t, metric_);
      out.stats.original_calls = data_->size();
      break;
    }
    case Mechanism::kLSeq: {
      FilterOutcome filtered = LSeqQuery(*laesa_, q, t, metric_);
      out.ids = Recheck(*data_, q, t, metric_, filtered);
      out.stats = filtered.stats;
      break;
    }
    case Mechanism::kLRei: {
      FilterOutcome filtered;
      const std::vector<double> row = laesa_->QueryRow(q, metric_, filtered.stats);
      TreeQueryResult hits =
          laesa_tree_->RangeQuery(row, WidenThreshold(t), Exclusion::kTriangle);
      filtered.candidates = std::move(hits.ids);
      filtered.stats.candidates = filtered.candidates.size();
      filtered.stats.surrogate_calls = hits.distance_calls;
      filtered.stats.nodes_visited = hits.nodes_visited;
      out.ids = Recheck(*data_, q, t, metric_, filtered);
      out.stats = filtered.stats;
      break;
    }
    case Mechanism::kNSeq: {
      FilterOutcome filtered = NSeqQuery(*apex_, q, t, metric_);
      out.ids = Recheck(*data_, q, t, metric_, filtered);
      out.stats = filtered.stats;
      break;
    }
    case Mechanism::kNRei: {
      FilterOutcome filtered;
      const std::vector<double> apex = apex_->QueryRow(q, metric_, filtered.stats);
      const TreeQueryResult hits =
          apex_tree_->RangeQuery(apex, WidenThreshold(t), Exclusion::kHilbert);
      ClassifyByUpperBound(*apex_, apex, hits.ids, t, filtered);
      filtered.stats.surrogate_calls = hits.distance_calls;
      filtered.stats.nodes_visited = hits.nodes_visited;
      out.ids = Recheck(*data_, q, t, metric_, filtered);
      out.stats = filtered.stats;
      break;
    }
    case Mechanism::kTree: {
      const Exclusion exclusion = metric_.has_npoint_property()
                                      ? Exclusion::kHilbert
                                      : Exclusion::kTriangle;
      TreeQueryResult hits = tree_->RangeQuery(q, t, exclusion);
      out.ids = std::move(hits.ids);
      out.stats.original_calls = hits.distance_calls;
      out.stats.nodes_visited = hits.nodes_visited;
      break;
    }
  }
  out.stats.results = out.ids.size();
  return out;
}

std::vector<ObjectId> BruteForceRange(const Dataset& data, VectorView q, double t,
                                      const Metric& metric) {
  std::vector<ObjectId> ids;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (metric(q, data[i]) <= t) ids.push_back(static_cast<ObjectId>(i));
  }
  return ids;
}

}  // namespace nsimplex
