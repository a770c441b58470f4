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

#ifndef NSIMPLEX_SIMPLEX_H_
#define NSIMPLEX_SIMPLEX_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nsimplex/dataset.h"
#include "nsimplex/metrics.h"

namespace nsimplex {

// Finite-precision thresholds for simplex construction.
struct TolerancePolicy {
  // Negative radicands down to -clamp_epsilon * scale are rounding jitter and
  // clamp to zero; anything lower means the distances are not embeddable.
  // `scale` is the largest squared magnitude seen while placing the apex.
  double clamp_epsilon = 1e-10;
  // A pivot whose altitude over its predecessors is below
  // degeneracy_epsilon * (its largest distance to them) is rejected.
  double degeneracy_epsilon = 1e-9;
};

// The n-dimensional image of one object: its Euclidean apex over a base
// simplex. The last coordinate is the (non-negative) altitude above the
// hyperplane holding the base.
class Apex {
 public:
  Apex() = default;
  Apex(std::vector<double> coords, std::uint64_t base_token)
      : coords_(std::move(coords)), base_token_(base_token) {}

  std::span<const double> coords() const { return coords_; }
  std::size_t dims() const { return coords_.size(); }
  double altitude() const { return coords_.empty() ? 0.0 : coords_.back(); }
  // Identity of the SimplexBase this apex was placed over.
  std::uint64_t base_token() const { return base_token_; }

 private:
  std::vector<double> coords_;
  std::uint64_t base_token_ = 0;
};

// Lower-triangular coordinates of the n pivot vertices in l2^(n-1).
//
// Row i holds vertex i; entries at column j >= i are zero, and entry
// (i, i-1) is the vertex's altitude over vertices 0..i-1. Immutable once
// built, so one base may be shared by any number of threads.
class SimplexBase {
 public:
  // `distances` is the n x n pivot distance matrix, row-major: symmetric,
  // zero diagonal, strictly positive off the diagonal.
  //
  // Throws NonEmbeddable when the matrix violates the n-point property,
  // DegeneratePivots (carrying the pivot index) when a pivot is affinely
  // dependent on or coincident with its predecessors, and DataError for
  // malformed matrices.
  static SimplexBase Build(std::size_t n, std::span<const double> distances,
                           TolerancePolicy policy = {});

  // Builds the base from pivot objects, evaluating their n(n-1)/2 distances.
  static SimplexBase FromPivots(const Dataset& pivots, const Metric& metric,
                                TolerancePolicy policy = {});

  std::size_t n() const { return n_; }
  // Vertex i in l2^(n-1).
  std::span<const double> row(std::size_t i) const {
    return {coords_.data() + i * stride(), stride()};
  }
  // Smallest vertex altitude accepted at build time (0 when n < 2).
  double min_altitude() const { return min_altitude_; }
  std::uint64_t token() const { return token_; }
  const TolerancePolicy& policy() const { return policy_; }

  // Places the apex whose distance to vertex i is distances[i]. The result
  // has n coordinates and a non-negative final coordinate.
  // Throws NonEmbeddable or DataError (wrong length, negative distance).
  Apex AddApex(std::span<const double> distances) const;
  // Allocation-free variant; `out` must hold n values.
  void AddApexInto(std::span<const double> distances,
                   std::span<double> out) const;

  // Vertex i zero-extended to n coordinates: the apex of pivot i itself.
  std::vector<double> VertexApexCoords(std::size_t i) const;

 private:
  SimplexBase(std::size_t n, TolerancePolicy policy);

  std::size_t stride() const { return n_ == 0 ? 0 : n_ - 1; }

  std::size_t n_ = 0;
  std::vector<double> coords_;  // n x (n-1), row-major
  double min_altitude_ = 0.0;
  TolerancePolicy policy_;
  std::uint64_t token_ = 0;
};

// Apex of `object`, from exactly n original-space distances to the pivots
// the base was built from. Adds n to *original_calls when given.
Apex Project(const SimplexBase& base, const Dataset& pivots, VectorView object,
             const Metric& metric, std::uint64_t* original_calls = nullptr);

struct Bounds {
  double lower;
  double upper;
};

// Both bounds from one pass over two apex rows of equal length n. The first
// n-1 squared differences are shared; the last coordinate contributes one
// difference term (lower) and one sum term (upper): n+1 terms in total.
template <typename TermCounter>
Bounds FusedBoundsCounted(std::span<const double> a, std::span<const double> b,
                          TermCounter&& count_term) {
  const std::size_t n = a.size();
  if (n == 0) return {0.0, 0.0};
  double shared = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double diff = a[i] - b[i];
    shared += diff * diff;
    count_term();
  }
  const double below = a[n - 1] - b[n - 1];
  const double above = a[n - 1] + b[n - 1];
  count_term();
  count_term();
  return {std::sqrt(shared + below * below), std::sqrt(shared + above * above)};
}

inline Bounds FusedBounds(std::span<const double> a,
                          std::span<const double> b) {
  return FusedBoundsCounted(a, b, [] {});
}

// The following throw UsageError unless both apexes share a base.
Bounds FusedBounds(const Apex& a, const Apex& b);
// l2 between same-side apexes; a proper metric and <= the true distance.
double LowerBound(const Apex& a, const Apex& b);
// l2 after reflecting one apex through the base hyperplane; >= the true
// distance but not a semi-metric (UpperBound(a, a) = 2 * altitude).
double UpperBound(const Apex& a, const Apex& b);
// (lower + upper) / 2: an estimator for approximate search, no guarantee.
double MeanEstimate(const Apex& a, const Apex& b);

}  // namespace nsimplex

#endif  // NSIMPLEX_SIMPLEX_H_
