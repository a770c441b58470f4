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

#ifndef NSIMPLEX_SEARCH_H_
#define NSIMPLEX_SEARCH_H_

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "nsimplex/dataset.h"
#include "nsimplex/htree.h"
#include "nsimplex/metrics.h"
#include "nsimplex/pivots.h"
#include "nsimplex/tables.h"

namespace nsimplex {

enum class Mechanism {
  kScan,  // linear scan in the original space
  kLSeq,  // sequential LAESA table
  kLRei,  // LAESA rows re-indexed by a Chebyshev hyperplane tree
  kNSeq,  // sequential apex table
  kNRei,  // apex rows re-indexed by a Euclidean tree with Hilbert exclusion
  kTree,  // hyperplane tree over the original space
};

inline constexpr std::array<Mechanism, 6> kAllMechanisms = {
    Mechanism::kScan, Mechanism::kLSeq, Mechanism::kLRei,
    Mechanism::kNSeq, Mechanism::kNRei, Mechanism::kTree};

std::string_view MechanismName(Mechanism mechanism);
std::optional<Mechanism> ParseMechanism(std::string_view name);
// True for mechanisms whose structures depend on the pivot set.
bool UsesPivots(Mechanism mechanism);

struct QueryResult {
  std::vector<ObjectId> ids;  // sorted ascending
  QueryStats stats;
};

// Exact threshold search over one prepared dataset with any of the six
// mechanisms. Structures are built explicitly; querying a mechanism that
// has not been built throws UsageError.
class SearchIndex {
 public:
  // `data` must already be prepared for `metric` (see PrepareDataset).
  SearchIndex(std::shared_ptr<const Dataset> data, Metric metric);

  // LAESA table plus its Chebyshev re-index tree.
  void BuildLaesa(PivotSet pivots,
                  std::size_t leaf_capacity = HyperplaneTree::kDefaultLeafCapacity);
  // Apex table plus its Euclidean re-index tree.
  void BuildApex(PivotSet pivots,
                 std::size_t leaf_capacity = HyperplaneTree::kDefaultLeafCapacity);
  // Installs a previously built table whose rows describe `data`.
  void AdoptLaesa(LaesaTable table,
                  std::size_t leaf_capacity = HyperplaneTree::kDefaultLeafCapacity);
  void AdoptApex(ApexTable table,
                 std::size_t leaf_capacity = HyperplaneTree::kDefaultLeafCapacity);
  // Tree over the original space, using Hilbert exclusion whenever the
  // metric allows it.
  void BuildTree(std::size_t leaf_capacity = HyperplaneTree::kDefaultLeafCapacity);

  bool IsBuilt(Mechanism mechanism) const;

  QueryResult ExactRangeQuery(Mechanism mechanism, VectorView q, double t) const;

  const Dataset& data() const { return *data_; }
  const Metric& metric() const { return metric_; }
  const LaesaTable* laesa() const { return laesa_ ? &*laesa_ : nullptr; }
  const ApexTable* apex() const { return apex_ ? &*apex_ : nullptr; }
  const HyperplaneTree* tree() const { return tree_ ? &*tree_ : nullptr; }

 private:
  std::shared_ptr<const Dataset> data_;
  Metric metric_;
  std::optional<LaesaTable> laesa_;
  std::optional<HyperplaneTree> laesa_tree_;
  std::optional<ApexTable> apex_;
  std::optional<HyperplaneTree> apex_tree_;
  std::optional<HyperplaneTree> tree_;
};

// Reference answer: every id within t of q, by linear scan.
std::vector<ObjectId> BruteForceRange(const Dataset& data, VectorView q, double t,
                                      const Metric& metric);

}  // namespace nsimplex

#endif  // NSIMPLEX_SEARCH_H_
