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

#ifndef NSIMPLEX_METRICS_H_
#define NSIMPLEX_METRICS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nsimplex/dataset.h"

namespace nsimplex {

enum class MetricKind {
  kEuclidean,
  kCosine,
  kJensenShannon,
  kTriangular,
  kChebyshev,
};

// A distance function over dense real vectors.
//
// operator() is the hot-path kernel and expects *prepared* inputs: cosine
// operands must already be l2-normalised and Jensen-Shannon / triangular
// operands l1-normalised (see PrepareDataset). Evaluate() is the checked
// entry point that validates and normalises raw vectors itself.
//
// Conventions:
//   cosine          l2 distance between unit vectors, sqrt(2 - 2 cos)
//   jensen-shannon  sqrt(JSD), base-2 logarithms, 0 log 0 = 0; in [0, 1]
//   triangular      sqrt(sum (x_i - y_i)^2 / (x_i + y_i)), 0/0 terms = 0
class Metric {
 public:
  constexpr explicit Metric(MetricKind kind) : kind_(kind) {}

  constexpr MetricKind kind() const { return kind_; }

  constexpr bool requires_nonnegative_input() const {
    return kind_ == MetricKind::kJensenShannon ||
           kind_ == MetricKind::kTriangular;
  }
  // True for metrics isometrically embeddable in Hilbert space.
  constexpr bool has_npoint_property() const {
    return kind_ != MetricKind::kChebyshev;
  }

  // Canonical command-line spelling, e.g. "jensen-shannon".
  std::string_view name() const;

  // Throws DataError on dimension mismatch.
  double operator()(VectorView x, VectorView y) const;

  friend constexpr bool operator==(Metric, Metric) = default;

 private:
  MetricKind kind_;
};

inline constexpr Metric kEuclidean{MetricKind::kEuclidean};
inline constexpr Metric kCosine{MetricKind::kCosine};
inline constexpr Metric kJensenShannon{MetricKind::kJensenShannon};
inline constexpr Metric kTriangular{MetricKind::kTriangular};
inline constexpr Metric kChebyshev{MetricKind::kChebyshev};

// Accepts the canonical names plus underscore spellings ("jensen_shannon").
std::optional<Metric> ParseMetric(std::string_view name);

// Why `x` is outside `metric`'s domain, or nullopt if it is acceptable.
std::optional<std::string> CheckVector(const Metric& metric, VectorView x);

// Validates and normalises one raw vector. Throws DataError.
std::vector<double> PrepareVector(const Metric& metric, VectorView x);

// Checked distance between raw vectors: validates both operands, normalises
// them as the metric requires, then applies the kernel.
double Evaluate(const Metric& metric, VectorView x, VectorView y);

struct ValidationIssue {
  std::size_t index;
  std::string reason;
};
using ValidationReport = std::vector<ValidationIssue>;

// Lists every object that Evaluate would reject. Never throws.
ValidationReport ValidateDataset(const Metric& metric, const Dataset& data);

// Validates the whole dataset (throwing DataError naming the first offenders)
// and normalises it in place, once, for use with the unchecked kernel.
Dataset PrepareDataset(const Metric& metric, Dataset data);

// Computed bounds can overshoot the true distance by a few ulps, so filters
// exclude against a slightly widened threshold and confirm against a slightly
// narrowed one. Final answers always use the exact threshold.
inline constexpr double kBoundarySlack = 1e-12;
inline double WidenThreshold(double t) { return t * (1.0 + kBoundarySlack); }
inline double NarrowThreshold(double t) { return t * (1.0 - kBoundarySlack); }

}  // namespace nsimplex

#endif  // NSIMPLEX_METRICS_H_
