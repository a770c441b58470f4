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

#ifndef NSIMPLEX_DATASET_H_
#define NSIMPLEX_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nsimplex {

// Position of an object inside the dataset it was indexed from.
using ObjectId = std::uint32_t;

// Read-only view of one vector object.
using VectorView = std::span<const double>;

// Dense, row-major collection of equal-length real vectors. Rows are
// object-contiguous so sequential scans touch memory linearly.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::size_t dim) : dim_(dim) {}
  // `values.size()` must be a multiple of `dim`.
  Dataset(std::size_t dim, std::vector<double> values);

  std::size_t size() const { return dim_ == 0 ? rows_ : values_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  bool empty() const { return size() == 0; }

  VectorView operator[](std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }
  std::span<double> mutable_row(std::size_t i) {
    return {values_.data() + i * dim_, dim_};
  }

  std::span<const double> values() const { return values_; }

  // Appends a row; throws DataError if `row.size() != dim()`.
  void Append(VectorView row);
  // Appends a zero-initialised row and returns it.
  std::span<double> AppendZero();
  void Reserve(std::size_t rows) { values_.reserve(rows * dim_); }

  // Rows [begin, end) as a new dataset.
  Dataset Slice(std::size_t begin, std::size_t end) const;
  // Rows at `indices`, in that order.
  Dataset Select(std::span<const std::size_t> indices) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::size_t dim_ = 0;
  // Row count for zero-dimensional datasets, where values_ says nothing.
  std::size_t rows_ = 0;
  std::vector<double> values_;
};

}  // namespace nsimplex

#endif  // NSIMPLEX_DATASET_H_
