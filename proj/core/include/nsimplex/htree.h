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

#ifndef NSIMPLEX_HTREE_H_
#define NSIMPLEX_HTREE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nsimplex/dataset.h"
#include "nsimplex/metrics.h"

namespace nsimplex {

enum class Exclusion {
  // Hyperplane test (d(q, far) - d(q, near)) / 2 > t. Valid for any metric.
  kTriangle,
  // (d(q, far)^2 - d(q, near)^2) / (2 d(far, near)) > t. Needs the
  // four-point property; never weaker than kTriangle.
  kHilbert,
};

struct TreeQueryResult {
  std::vector<ObjectId> ids;  // sorted ascending
  std::uint64_t distance_calls = 0;
  std::uint64_t nodes_visited = 0;
};

// Monotone hyperplane tree over the rows of a dataset.
//
// Each internal node splits its partition between two pivots; every object
// goes to the nearer one. A child inherits its side's pivot from the parent
// (so its distance to the query is already known) and takes as second pivot
// the member farthest from the inherited one. Pivots are ordinary members:
// every object lives in exactly one leaf.
//
// The tree keeps a view of the row storage, which must outlive it and stay
// in place. Immutable after construction; queries may run concurrently.
class HyperplaneTree {
 public:
  static constexpr std::size_t kDefaultLeafCapacity = 16;

  struct Node {
    static constexpr std::int32_t kNone = -1;

    bool is_leaf() const { return left == kNone; }

    // Internal nodes. pivot_a is the pivot inherited from the parent (for
    // the root, the first member).
    ObjectId pivot_a = 0;
    ObjectId pivot_b = 0;
    double d_ab = 0.0;
    double cover_a = 0.0;  // max d(s, pivot_a) over the left partition
    double cover_b = 0.0;  // max d(s, pivot_b) over the right partition
    std::int32_t left = kNone;
    std::int32_t right = kNone;
    // Leaves: members are ids()[begin, end).
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
  };

  HyperplaneTree(const Dataset& points, Metric distance,
                 std::size_t leaf_capacity = kDefaultLeafCapacity);

  // All ids within t of q under the tree's distance. Throws UsageError for
  // Hilbert exclusion over a distance without the four-point property.
  TreeQueryResult RangeQuery(VectorView q, double t, Exclusion exclusion) const;

  const Metric& distance() const { return distance_; }
  std::size_t size() const { return ids_.size(); }
  std::size_t leaf_capacity() const { return leaf_capacity_; }
  std::span<const Node> nodes() const { return nodes_; }
  // Leaf member ids, concatenated in leaf order.
  std::span<const ObjectId> ids() const { return ids_; }
  std::uint64_t build_distance_calls() const { return build_calls_; }
  // Inherited pivot of each node (the parent's pivot on this node's side),
  // or -1 for the root.
  std::span<const std::int64_t> inherited_pivots() const { return inherited_; }

 private:
  VectorView Row(ObjectId id) const {
    return {values_.data() + static_cast<std::size_t>(id) * dim_, dim_};
  }

  std::span<const double> values_;
  std::size_t dim_ = 0;
  Metric distance_;
  std::size_t leaf_capacity_;
  std::vector<Node> nodes_;
  std::vector<ObjectId> ids_;
  std::vector<std::int64_t> inherited_;
  std::uint64_t build_calls_ = 0;
};

}  // namespace nsimplex

#endif  // NSIMPLEX_HTREE_H_
