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

#include "nsimplex/htree.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "nsimplex/errors.h"

namespace nsimplex {
namespace {

constexpr double kUnknown = std::numeric_limits<double>::quiet_NaN();

struct Member {
  ObjectId id;
  double to_inherited;  // distance to the partition's inherited pivot
};

struct BuildTask {
  std::int32_t node;
  std::vector<Member> members;
  std::int64_t inherited;  // -1 at the root
};

}  // namespace

HyperplaneTree::HyperplaneTree(const Dataset& points, Metric distance,
                               std::size_t leaf_capacity)
    : values_(points.values()), dim_(points.dim()), distance_(distance),
      leaf_capacity_(std::max<std::size_t>(leaf_capacity, 1)) {
  if (points.empty()) return;
  ids_.reserve(points.size());

  std::vector<Member> all(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    all[i] = {static_cast<ObjectId>(i), kUnknown};
  }
  nodes_.emplace_back();
  inherited_.push_back(-1);
  std::vector<BuildTask> stack;
  stack.push_back({0, std::move(all), -1});

  while (!stack.empty()) {
    BuildTask task = std::move(stack.back());
    stack.pop_back();
    std::vector<Member>& members = task.members;

    auto make_leaf = [&] {
      Node& leaf = nodes_[task.node];
      leaf.begin = static_cast<std::uint32_t>(ids_.size());
      for (const Member& m : members) ids_.push_back(m.id);
      leaf.end = static_cast<std::uint32_t>(ids_.size());
    };
    if (members.size() <= leaf_capacity_) {
      make_leaf();
      continue;
    }

    ObjectId a;
    if (task.inherited < 0) {
      a = members.front().id;
      for (Member& m : members) m.to_inherited = distance_(Row(a), Row(m.id));
      build_calls_ += members.size();
    } else {
      a = static_cast<ObjectId>(task.inherited);
    }
    const auto far = std::max_element(
        members.begin(), members.end(), [](const Member& x, const Member& y) {
          return x.to_inherited < y.to_inherited;
        });
    if (!(far->to_inherited > 0.0)) {
      make_leaf();  // every member coincides with the pivot
      continue;
    }
    const ObjectId b = far->id;
    const double d_ab = far->to_inherited;

    std::vector<Member> left;
    std::vector<Member> right;
    double cover_a = 0.0;
    double cover_b = 0.0;
    for (const Member& m : members) {
      const double to_b = m.id == b ? 0.0 : distance_(Row(b), Row(m.id));
      if (m.to_inherited <= to_b) {
        cover_a = std::max(cover_a, m.to_inherited);
        left.push_back({m.id, m.to_inherited});
      } else {
        cover_b = std::max(cover_b, to_b);
        right.push_back({m.id, to_b});
      }
    }
    build_calls_ += members.size() - 1;
    members.clear();
    members.shrink_to_fit();

    const auto left_index = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    inherited_.push_back(a);
    const auto right_index = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    inherited_.push_back(b);

    Node& node = nodes_[task.node];
    node.pivot_a = a;
    node.pivot_b = b;
    node.d_ab = d_ab;
    node.cover_a = cover_a;
    node.cover_b = cover_b;
    node.left = left_index;
    node.right = right_index;

    // Right first so the left subtree is laid out first.
    stack.push_back({right_index, std::move(right), b});
    stack.push_back({left_index, std::move(left), a});
  }
}

TreeQueryResult HyperplaneTree::RangeQuery(VectorView q, double t,
                                           Exclusion exclusion) const {
  if (!(t >= 0.0)) throw UsageError("threshold must be non-negative");
  if (exclusion == Exclusion::kHilbert && !distance_.has_npoint_property()) {
    throw UsageError("Hilbert exclusion is invalid for " +
                     std::string(distance_.name()) + " distance");
  }
  TreeQueryResult result;
  if (nodes_.empty()) return result;
  const double reach = WidenThreshold(t);

  auto dist = [&](ObjectId id) {
    ++result.distance_calls;
    return distance_(q, Row(id));
  };
  // True when the hyperplane between `near` and `far` separates q from the
  // `near` side by more than t.
  auto beyond_plane = [&](double to_near, double to_far, double d_ab) {
    if (exclusion == Exclusion::kTriangle) return (to_near - to_far) / 2.0 > reach;
    return (to_near * to_near - to_far * to_far) / (2.0 * d_ab) > reach;
  };

  struct Visit {
    std::int32_t node;
    double to_inherited;
  };
  std::vector<Visit> stack;
  stack.push_back({0, kUnknown});
  while (!stack.empty()) {
    const Visit visit = stack.back();
    stack.pop_back();
    const Node& node = nodes_[visit.node];
    ++result.nodes_visited;

    if (node.is_leaf()) {
      const std::int64_t inherited = inherited_[visit.node];
      for (std::uint32_t k = node.begin; k < node.end; ++k) {
        const ObjectId id = ids_[k];
        const double d = static_cast<std::int64_t>(id) == inherited
                             ? visit.to_inherited
                             : dist(id);
        if (d <= t) result.ids.push_back(id);
      }
      continue;
    }

    const double to_a =
        std::isnan(visit.to_inherited) ? dist(node.pivot_a) : visit.to_inherited;
    const double to_b = dist(node.pivot_b);
    const bool skip_right =
        to_b > node.cover_b + reach || beyond_plane(to_b, to_a, node.d_ab);
    const bool skip_left =
        to_a > node.cover_a + reach || beyond_plane(to_a, to_b, node.d_ab);
    if (!skip_right) stack.push_back({node.right, to_b});
    if (!skip_left) stack.push_back({node.left, to_a});
  }
  std::sort(result.ids.begin(), result.ids.end());
  return result;
}

}  // namespace nsimplex
