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

#include "nsimplex/dataset.h"

#include <algorithm>
#include <string>

#include "nsimplex/errors.h"

namespace nsimplex {

Dataset::Dataset(std::size_t dim, std::vector<double> values)
    : dim_(dim), values_(std::move(values)) {
  if (dim_ == 0) {
    if (!values_.empty()) throw DataError("zero-dimensional dataset with values");
    return;
  }
  if (values_.size() % dim_ != 0) {
    throw DataError("dataset of " + std::to_string(values_.size()) +
                    " values is not a multiple of dimension " +
                    std::to_string(dim_));
  }
}

void Dataset::Append(VectorView row) {
  if (row.size() != dim_) {
    throw DataError("row of dimension " + std::to_string(row.size()) +
                    " appended to dataset of dimension " +
                    std::to_string(dim_));
  }
  values_.insert(values_.end(), row.begin(), row.end());
  if (dim_ == 0) ++rows_;
}

std::span<double> Dataset::AppendZero() {
  values_.resize(values_.size() + dim_, 0.0);
  if (dim_ == 0) ++rows_;
  return mutable_row(size() - 1);
}

Dataset Dataset::Slice(std::size_t begin, std::size_t end) const {
  end = std::min(end, size());
  Dataset out(dim_);
  if (begin >= end) return out;
  if (dim_ == 0) {
    out.rows_ = end - begin;
    return out;
  }
  out.values_.assign(values_.begin() + begin * dim_, values_.begin() + end * dim_);
  return out;
}

Dataset Dataset::Select(std::span<const std::size_t> indices) const {
  Dataset out(dim_);
  out.Reserve(indices.size());
  for (std::size_t i : indices) out.Append((*this)[i]);
  return out;
}

}  // namespace nsimplex
