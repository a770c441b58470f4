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

#ifndef NSIMPLEX_SYNTHETIC_H_
#define NSIMPLEX_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "nsimplex/dataset.h"

namespace nsimplex {

// Components uniform in [0, 1), from a generator seeded with `seed`.
Dataset GenerateUniform(std::size_t count, std::size_t dims, std::uint64_t seed);

// Non-negative histograms with `bins` bins: each object mixes a few shared
// prototype profiles with gamma noise, and roughly a tenth of the bins are
// empty. Every row has a positive sum.
Dataset GenerateHistograms(std::size_t count, std::size_t bins,
                           std::uint64_t seed);

// Data with low intrinsic dimension inside l2^dims: a random offset plus
// `intrinsic` orthonormal directions with geometrically decaying scale
// (ratio `decay`), plus isotropic noise of standard deviation `noise`.
Dataset GenerateLowRank(std::size_t count, std::size_t dims,
                        std::size_t intrinsic, std::uint64_t seed,
                        double decay = 0.75, double noise = 1e-3);

// Points on a random k-dimensional affine flat inside l2^dims, no noise.
Dataset GenerateFlat(std::size_t count, std::size_t dims, std::size_t k,
                     std::uint64_t seed);

enum class SyntheticKind { kUniform, kHistogram, kLowRank };
std::optional<SyntheticKind> ParseSyntheticKind(std::string_view name);

}  // namespace nsimplex

#endif  // NSIMPLEX_SYNTHETIC_H_
