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

#include "nsimplex/simplex.h"

#include <algorithm>
#include <atomic>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "nsimplex/errors.h"

namespace nsimplex {
namespace {

std::uint64_t NextToken() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

// Places an apex over the k-vertex base whose vertex i occupies
// rows[i * stride .. i * stride + i). Writes k coordinates to `out`.
//
// out starts as (d_0, 0, ..., 0), at distance d_0 from vertex 0 (the origin).
// Step i rotates the last non-zero coordinate y into two, (c, h), so that
// the point reaches distance d_i from vertex i while keeping every earlier
// distance: c = y - (d_i^2 - l^2) / 2x with l the current distance to vertex
// i and x its altitude, then h = sqrt(y^2 - c^2) = sqrt((y - c)(y + c)).
void PlaceApex(const double* rows, std::size_t stride, std::size_t k,
               std::span<const double> distances, std::span<double> out,
               double clamp_epsilon) {
  std::fill(out.begin(), out.end(), 0.0);
  if (k == 0) return;
  // The altitude is a square root of a difference of near-equal squares, so
  // the working point is kept in extended precision and rounded once.
  thread_local std::vector<long double> work;
  work.assign(k, 0.0L);
  work[0] = distances[0];
  long double scale = work[0] * work[0];
  for (std::size_t i = 1; i < k; ++i) {
    const double* vertex = rows + i * stride;
    long double l_sq = 0.0L;
    for (std::size_t j = 0; j < i; ++j) {
      const long double diff = vertex[j] - work[j];
      l_sq += diff * diff;
    }
    const long double delta = distances[i];
    const long double x = vertex[i - 1];
    const long double y = work[i - 1];
    // y - c, where c is the new coordinate along axis i - 1.
    const long double shift = (delta * delta - l_sq) / (2.0L * x);
    scale = std::max({scale, delta * delta, l_sq});
    long double radicand = shift * (2.0L * y - shift);
    if (radicand < 0.0L) {
      if (radicand < -clamp_epsilon * scale) {
        std::ostringstream msg;
        msg << "distances are not embeddable: squared altitude "
            << static_cast<double>(radicand) << " at vertex " << i << " (scale "
            << static_cast<double>(scale) << ")";
        throw NonEmbeddable(msg.str());
      }
      radicand = 0.0L;
    }
    work[i - 1] = y - shift;
    work[i] = std::sqrt(radicand);
  }
  for (std::size_t i = 0; i < k; ++i) out[i] = static_cast<double>(work[i]);
}

void CheckDistances(std::span<const double> distances, std::size_t n) {
  if (distances.size() != n) {
    throw DataError("expected " + std::to_string(n) + " pivot distances, got " +
                    std::to_string(distances.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(distances[i] >= 0.0) || !std::isfinite(distances[i])) {
      throw DataError("pivot distance " + std::to_string(i) +
                      " is negative or not finite");
    }
  }
}

}  // namespace

SimplexBase::SimplexBase(std::size_t n, TolerancePolicy policy)
    : n_(n), coords_(n * (n == 0 ? 0 : n - 1), 0.0), policy_(policy),
      token_(NextToken()) {}

SimplexBase SimplexBase::Build(std::size_t n, std::span<const double> distances,
                               TolerancePolicy policy) {
  if (n == 0) throw UsageError("a simplex base needs at least one pivot");
  if (distances.size() != n * n) {
    throw DataError("pivot distance matrix must be " + std::to_string(n) +
                    "x" + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (distances[i * n + i] != 0.0) {
      throw DataError("pivot distance matrix has non-zero diagonal at " +
                      std::to_string(i));
    }
    for (std::size_t j = 0; j < i; ++j) {
      const double dij = distances[i * n + j];
      const double dji = distances[j * n + i];
      if (!std::isfinite(dij) || dij < 0.0) {
        throw DataError("pivot distance (" + std::to_string(i) + ", " +
                        std::to_string(j) + ") is negative or not finite");
      }
      if (std::abs(dij - dji) > 1e-12 * std::max(dij, dji)) {
        throw DataError("pivot distance matrix is not symmetric at (" +
                        std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      if (dij == 0.0) {
        throw DegeneratePivots(i, "pivot " + std::to_string(i) +
                                      " duplicates pivot " + std::to_string(j));
      }
    }
  }

  SimplexBase base(n, policy);
  const std::size_t stride = base.stride();
  std::vector<double> to_previous;
  double min_altitude = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < n; ++k) {
    to_previous.assign(distances.begin() + k * n, distances.begin() + k * n + k);
    std::span<double> row(base.coords_.data() + k * stride, k);
    try {
      PlaceApex(base.coords_.data(), stride, k, to_previous, row,
                policy.clamp_epsilon);
    } catch (const NonEmbeddable& e) {
      throw NonEmbeddable("pivot " + std::to_string(k) + ": " + e.what());
    }
    const double altitude = row[k - 1];
    const double reach =
        *std::max_element(to_previous.begin(), to_previous.end());
    if (altitude < policy.degeneracy_epsilon * reach) {
      std::ostringstream msg;
      msg << "pivot " << k << " is affinely dependent on its predecessors "
          << "(altitude " << altitude << ", largest distance " << reach << ")";
      throw DegeneratePivots(k, msg.str());
    }
    min_altitude = std::min(min_altitude, altitude);
  }
  base.min_altitude_ = n < 2 ? 0.0 : min_altitude;
  return base;
}

SimplexBase SimplexBase::FromPivots(const Dataset& pivots, const Metric& metric,
                                    TolerancePolicy policy) {
  if (!metric.has_npoint_property()) {
    throw UsageError("apex coordinates need a metric with the n-point property, not " +
                     std::string(metric.name()));
  }
  const std::size_t n = pivots.size();
  std::vector<double> distances(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double d = metric(pivots[i], pivots[j]);
      distances[i * n + j] = d;
      distances[j * n + i] = d;
    }
  }
  return Build(n, distances, policy);
}

void SimplexBase::AddApexInto(std::span<const double> distances,
                              std::span<double> out) const {
  CheckDistances(distances, n_);
  if (out.size() != n_) throw UsageError("apex output buffer has wrong size");
  PlaceApex(coords_.data(), stride(), n_, distances, out,
            policy_.clamp_epsilon);
}

Apex SimplexBase::AddApex(std::span<const double> distances) const {
  std::vector<double> coords(n_);
  AddApexInto(distances, coords);
  return Apex(std::move(coords), token_);
}

std::vector<double> SimplexBase::VertexApexCoords(std::size_t i) const {
  std::vector<double> out(n_, 0.0);
  const auto r = row(i);
  std::copy(r.begin(), r.end(), out.begin());
  return out;
}

Apex Project(const SimplexBase& base, const Dataset& pivots, VectorView object,
             const Metric& metric, std::uint64_t* original_calls) {
  if (pivots.size() != base.n()) {
    throw UsageError("pivot count does not match simplex base");
  }
  std::vector<double> distances(base.n());
  for (std::size_t i = 0; i < base.n(); ++i) {
    distances[i] = metric(object, pivots[i]);
  }
  if (original_calls != nullptr) *original_calls += base.n();
  return base.AddApex(distances);
}

namespace {

void RequireSameBase(const Apex& a, const Apex& b) {
  if (a.base_token() != b.base_token() || a.dims() != b.dims()) {
    throw UsageError("apexes were placed over different simplex bases");
  }
}

}  // namespace

Bounds FusedBounds(const Apex& a, const Apex& b) {
  RequireSameBase(a, b);
  return FusedBounds(a.coords(), b.coords());
}

double LowerBound(const Apex& a, const Apex& b) {
  return FusedBounds(a, b).lower;
}

double UpperBound(const Apex& a, const Apex& b) {
  return FusedBounds(a, b).upper;
}

double MeanEstimate(const Apex& a, const Apex& b) {
  const Bounds bounds = FusedBounds(a, b);
  return 0.5 * (bounds.lower + bounds.upper);
}

}  // namespace nsimplex
