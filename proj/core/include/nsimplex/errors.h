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

#ifndef NSIMPLEX_ERRORS_H_
#define NSIMPLEX_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nsimplex {

// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated an API precondition (bad argument, wrong metric for an
// operation, mechanism not built, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Input data is malformed or does not satisfy a metric's domain: unreadable
// files, ragged rows, negative histogram bins, dimension mismatches.
class DataError : public Error {
 public:
  using Error::Error;
};

// Distances cannot be realised as a Euclidean simplex: some radicand fell
// below the clamp threshold, so the metric (or the data) lacks the n-point
// property.
class NonEmbeddable : public Error {
 public:
  using Error::Error;
};

// A pivot is (numerically) affinely dependent on its predecessors, or
// coincides with one of them.
class DegeneratePivots : public Error {
 public:
  DegeneratePivots(std::size_t pivot_index, const std::string& what)
      : Error(what), pivot_index_(pivot_index) {}

  // Zero-based position of the offending pivot in the pivot order.
  std::size_t pivot_index() const { return pivot_index_; }

 private:
  std::size_t pivot_index_;
};

// An internal guarantee failed, e.g. two exact search mechanisms disagreed.
// Always a bug; never swallowed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace nsimplex

#endif  // NSIMPLEX_ERRORS_H_
