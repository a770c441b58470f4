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

#ifndef NSIMPLEX_LINALG_H_
#define NSIMPLEX_LINALG_H_

#include <cstddef>
#include <vector>

#include "nsimplex/dataset.h"

namespace nsimplex {

// Eigen-decomposition of a real symmetric matrix.
struct SymmetricEigen {
  std::vector<double> values;  // descending
  Dataset vectors;             // row i: unit eigenvector for values[i]
  int sweeps = 0;
};

// Cyclic Jacobi rotations until the off-diagonal Frobenius norm falls below
// `tolerance` times the matrix norm. `matrix` is d x d, row-major, and must
// be symmetric.
SymmetricEigen JacobiEigen(std::vector<double> matrix, std::size_t d,
                           double tolerance = 1e-12, int max_sweeps = 100);

// Sample covariance (1 / (m - 1) normalisation) of the rows of `data`,
// d x d row-major. Writes the column means to *mean when given.
std::vector<double> Covariance(const Dataset& data,
                               std::vector<double>* mean = nullptr);

struct PrincipalAxes {
  std::vector<double> mean;
  std::vector<double> eigenvalues;  // top k, descending
  Dataset axes;                     // k unit rows, in input coordinates
};

// Top-k principal axes of `data`. Each axis is signed so that its
// largest-magnitude component is positive. Throws DataError when fewer than
// k eigenvalues exceed 1e-12 times the largest, or when |data| < 2.
PrincipalAxes ComputePrincipalAxes(const Dataset& data, std::size_t k);

}  // namespace nsimplex

#endif  // NSIMPLEX_LINALG_H_
