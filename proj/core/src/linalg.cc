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

#include "nsimplex/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nsimplex/errors.h"

namespace nsimplex {

SymmetricEigen JacobiEigen(std::vector<double> a, std::size_t d,
                           double tolerance, int max_sweeps) {
  if (a.size() != d * d) throw UsageError("JacobiEigen: matrix is not d x d");
  auto at = [&a, d](std::size_t i, std::size_t j) -> double& {
    return a[i * d + j];
  };
  // v holds eigenvectors as columns during the iteration.
  std::vector<double> v(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) v[i * d + i] = 1.0;

  double total = 0.0;
  for (double x : a) total += x * x;
  const double threshold = tolerance * std::sqrt(total);

  SymmetricEigen result;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) off += 2.0 * at(i, j) * at(i, j);
    }
    if (std::sqrt(off) <= threshold) break;
    result.sweeps = sweep + 1;

    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        // Rotation angle zeroing a_pq (Golub & Van Loan, Alg. 8.4.1).
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < d; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const double vkp = v[k * d + p];
          const double vkq = v[k * d + q];
          v[k * d + p] = c * vkp - s * vkq;
          v[k * d + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return at(x, x) > at(y, y);
  });
  result.vectors = Dataset(d);
  result.vectors.Reserve(d);
  for (std::size_t idx : order) {
    result.values.push_back(at(idx, idx));
    auto row = result.vectors.AppendZero();
    for (std::size_t k = 0; k < d; ++k) row[k] = v[k * d + idx];
  }
  return result;
}

std::vector<double> Covariance(const Dataset& data, std::vector<double>* mean) {
  const std::size_t d = data.dim();
  const std::size_t m = data.size();
  if (m < 2) throw DataError("covariance needs at least two objects");
  std::vector<double> mu(d, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = data[i];
    for (std::size_t k = 0; k < d; ++k) mu[k] += row[k];
  }
  for (double& x : mu) x /= static_cast<double>(m);

  std::vector<double> cov(d * d, 0.0);
  std::vector<double> centred(d);
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = data[i];
    for (std::size_t k = 0; k < d; ++k) centred[k] = row[k] - mu[k];
    for (std::size_t r = 0; r < d; ++r) {
      const double cr = centred[r];
      double* out = cov.data() + r * d;
      for (std::size_t c = r; c < d; ++c) out[c] += cr * centred[c];
    }
  }
  const double norm = 1.0 / static_cast<double>(m - 1);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = r; c < d; ++c) {
      cov[r * d + c] *= norm;
      cov[c * d + r] = cov[r * d + c];
    }
  }
  if (mean != nullptr) *mean = std::move(mu);
  return cov;
}

PrincipalAxes ComputePrincipalAxes(const Dataset& data, std::size_t k) {
  if (k == 0) throw UsageError("need at least one principal axis");
  if (k > data.dim()) {
    throw UsageError("cannot take " + std::to_string(k) +
                     " principal axes of " + std::to_string(data.dim()) +
                     "-dimensional data");
  }
  PrincipalAxes out;
  SymmetricEigen eigen = JacobiEigen(Covariance(data, &out.mean), data.dim());
  const double largest = eigen.values.empty() ? 0.0 : eigen.values.front();
  std::size_t usable = 0;
  while (usable < eigen.values.size() && largest > 0.0 &&
         eigen.values[usable] > 1e-12 * largest) {
    ++usable;
  }
  if (usable < k) {
    throw DataError("data has rank " + std::to_string(usable) + ", below the " +
                    std::to_string(k) + " principal axes requested");
  }
  out.axes = Dataset(data.dim());
  out.axes.Reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.eigenvalues.push_back(eigen.values[i]);
    auto axis = out.axes.AppendZero();
    const auto src = eigen.vectors[i];
    std::copy(src.begin(), src.end(), axis.begin());
    const auto peak = std::max_element(
        axis.begin(), axis.end(),
        [](double x, double y) { return std::abs(x) < std::abs(y); });
    if (*peak < 0.0) {
      for (double& x : axis) x = -x;
    }
  }
  return out;
}

}  // namespace nsimplex
