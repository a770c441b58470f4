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

#include "nsimplex/metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "nsimplex/errors.h"

namespace nsimplex {
namespace {

double EuclideanKernel(VectorView x, VectorView y) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double diff = x[i] - y[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

double ChebyshevKernel(VectorView x, VectorView y) {
  double best = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    best = std::max(best, std::abs(x[i] - y[i]));
  }
  return best;
}

// p * log2(2p / m), with 0 log 0 = 0.
inline double JsTerm(double p, double m) {
  return p > 0.0 ? p * std::log2(2.0 * p / m) : 0.0;
}

double JensenShannonKernel(VectorView x, VectorView y) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double m = x[i] + y[i];
    if (m <= 0.0) continue;
    // Two-operand addition is commutative, so swapping x and y reproduces
    // the sum bit for bit.
    sum += JsTerm(x[i], m) + JsTerm(y[i], m);
  }
  return std::sqrt(std::clamp(0.5 * sum, 0.0, 1.0));
}

double TriangularKernel(VectorView x, VectorView y) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double m = x[i] + y[i];
    if (m <= 0.0) continue;
    const double diff = x[i] - y[i];
    sum += diff * diff / m;
  }
  return std::sqrt(sum);
}

bool NeedsL1(MetricKind kind) {
  return kind == MetricKind::kJensenShannon || kind == MetricKind::kTriangular;
}

void NormaliseInPlace(MetricKind kind, std::span<double> x) {
  double norm = 0.0;
  if (kind == MetricKind::kCosine) {
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
  } else if (NeedsL1(kind)) {
    for (double v : x) norm += v;
  } else {
    return;
  }
  for (double& v : x) v /= norm;
}

}  // namespace

std::string_view Metric::name() const {
  switch (kind_) {
    case MetricKind::kEuclidean:
      return "euclidean";
    case MetricKind::kCosine:
      return "cosine";
    case MetricKind::kJensenShannon:
      return "jensen-shannon";
    case MetricKind::kTriangular:
      return "triangular";
    case MetricKind::kChebyshev:
      return "chebyshev";
  }
  return "unknown";
}

double Metric::operator()(VectorView x, VectorView y) const {
  if (x.size() != y.size()) {
    throw DataError("dimension mismatch: " + std::to_string(x.size()) +
                    " vs " + std::to_string(y.size()));
  }
  switch (kind_) {
    case MetricKind::kEuclidean:
    case MetricKind::kCosine:
      return EuclideanKernel(x, y);
    case MetricKind::kJensenShannon:
      return JensenShannonKernel(x, y);
    case MetricKind::kTriangular:
      return TriangularKernel(x, y);
    case MetricKind::kChebyshev:
      return ChebyshevKernel(x, y);
  }
  return 0.0;
}

std::optional<Metric> ParseMetric(std::string_view name) {
  std::string key(name);
  std::replace(key.begin(), key.end(), '_', '-');
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (key == "euclidean" || key == "l2") return kEuclidean;
  if (key == "cosine") return kCosine;
  if (key == "jensen-shannon" || key == "js") return kJensenShannon;
  if (key == "triangular") return kTriangular;
  if (key == "chebyshev" || key == "linf") return kChebyshev;
  return std::nullopt;
}

std::optional<std::string> CheckVector(const Metric& metric, VectorView x) {
  if (x.empty()) return "empty vector";
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      return "non-finite component at position " + std::to_string(i);
    }
    if (metric.requires_nonnegative_input() && x[i] < 0.0) {
      return "negative component at position " + std::to_string(i);
    }
    sum += x[i];
    sum_sq += x[i] * x[i];
  }
  if (metric.kind() == MetricKind::kCosine && sum_sq <= 0.0) {
    return "zero vector has no direction";
  }
  if (NeedsL1(metric.kind()) && sum <= 0.0) {
    return "zero-sum vector cannot be normalised";
  }
  return std::nullopt;
}

std::vector<double> PrepareVector(const Metric& metric, VectorView x) {
  if (auto problem = CheckVector(metric, x)) {
    throw DataError(std::string(metric.name()) + ": " + *problem);
  }
  std::vector<double> out(x.begin(), x.end());
  NormaliseInPlace(metric.kind(), out);
  return out;
}

double Evaluate(const Metric& metric, VectorView x, VectorView y) {
  if (x.size() != y.size()) {
    throw DataError("dimension mismatch: " + std::to_string(x.size()) +
                    " vs " + std::to_string(y.size()));
  }
  const std::vector<double> px = PrepareVector(metric, x);
  const std::vector<double> py = PrepareVector(metric, y);
  return metric(px, py);
}

ValidationReport ValidateDataset(const Metric& metric, const Dataset& data) {
  ValidationReport report;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (auto problem = CheckVector(metric, data[i])) {
      report.push_back({i, std::move(*problem)});
    }
  }
  return report;
}

Dataset PrepareDataset(const Metric& metric, Dataset data) {
  const ValidationReport report = ValidateDataset(metric, data);
  if (!report.empty()) {
    std::ostringstream msg;
    msg << report.size() << " object(s) invalid for " << metric.name() << ":";
    for (std::size_t i = 0; i < std::min<std::size_t>(report.size(), 5); ++i) {
      msg << " [" << report[i].index << "] " << report[i].reason << ";";
    }
    throw DataError(msg.str());
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    NormaliseInPlace(metric.kind(), data.mutable_row(i));
  }
  return data;
}

}  // namespace nsimplex
