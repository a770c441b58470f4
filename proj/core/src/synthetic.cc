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

#include "nsimplex/synthetic.h"

#include <cmath>
#include <random>
#include <vector>

#include "nsimplex/errors.h"

namespace nsimplex {
namespace {

// `k` random orthonormal vectors in R^d (Gram-Schmidt on Gaussian draws).
std::vector<std::vector<double>> RandomOrthonormal(std::size_t k, std::size_t d,
                                                   std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::vector<double>> basis;
  while (basis.size() < k) {
    std::vector<double> v(d);
    for (double& x : v) x = gauss(rng);
    for (const auto& b : basis) {
      double dot = 0.0;
      for (std::size_t i = 0; i < d; ++i) dot += v[i] * b[i];
      for (std::size_t i = 0; i < d; ++i) v[i] -= dot * b[i];
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-8) continue;
    for (double& x : v) x /= norm;
    basis.push_back(std::move(v));
  }
  return basis;
}

void RequireShape(std::size_t count, std::size_t dims) {
  if (count == 0 || dims == 0) {
    throw UsageError("synthetic data needs positive count and dimension");
  }
}

}  // namespace

Dataset GenerateUniform(std::size_t count, std::size_t dims, std::uint64_t seed) {
  RequireShape(count, dims);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Dataset out(dims);
  out.Reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    for (double& x : out.AppendZero()) x = unit(rng);
  }
  return out;
}

Dataset GenerateHistograms(std::size_t count, std::size_t bins,
                           std::uint64_t seed) {
  RequireShape(count, bins);
  std::mt19937_64 rng(seed);
  constexpr std::size_t kPrototypes = 6;
  std::gamma_distribution<double> shape(0.6, 1.0);
  std::vector<std::vector<double>> prototypes(kPrototypes,
                                              std::vector<double>(bins));
  for (auto& p : prototypes) {
    for (double& x : p) x = shape(rng);
  }
  std::gamma_distribution<double> weight(0.5, 1.0);
  std::gamma_distribution<double> jitter(2.0, 0.05);
  std::bernoulli_distribution empty(0.1);
  Dataset out(bins);
  out.Reserve(count);
  std::vector<double> w(kPrototypes);
  for (std::size_t i = 0; i < count; ++i) {
    for (double& x : w) x = weight(rng);
    auto row = out.AppendZero();
    double sum = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
      double v = jitter(rng);
      for (std::size_t p = 0; p < kPrototypes; ++p) v += w[p] * prototypes[p][b];
      if (empty(rng)) v = 0.0;
      row[b] = v;
      sum += v;
    }
    if (sum <= 0.0) row[0] = 1.0;
  }
  return out;
}

Dataset GenerateLowRank(std::size_t count, std::size_t dims,
                        std::size_t intrinsic, std::uint64_t seed, double decay,
                        double noise) {
  RequireShape(count, dims);
  if (intrinsic == 0 || intrinsic > dims) {
    throw UsageError("intrinsic dimension must be in [1, dims]");
  }
  std::mt19937_64 rng(seed);
  const auto basis = RandomOrthonormal(intrinsic, dims, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> offset(dims);
  for (double& x : offset) x = unit(rng);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Dataset out(dims);
  out.Reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto row = out.AppendZero();
    for (std::size_t c = 0; c < dims; ++c) row[c] = offset[c] + noise * gauss(rng);
    double scale = 1.0;
    for (const auto& b : basis) {
      const double z = scale * gauss(rng);
      for (std::size_t c = 0; c < dims; ++c) row[c] += z * b[c];
      scale *= decay;
    }
  }
  return out;
}

Dataset GenerateFlat(std::size_t count, std::size_t dims, std::size_t k,
                     std::uint64_t seed) {
  return GenerateLowRank(count, dims, k, seed, 1.0, 0.0);
}

std::optional<SyntheticKind> ParseSyntheticKind(std::string_view name) {
  if (name == "uniform") return SyntheticKind::kUniform;
  if (name == "histogram") return SyntheticKind::kHistogram;
  if (name == "lowrank") return SyntheticKind::kLowRank;
  return std::nullopt;
}

}  // namespace nsimplex
