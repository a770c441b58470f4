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

#ifndef NSIMPLEX_IO_H_
#define NSIMPLEX_IO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nsimplex/dataset.h"
#include "nsimplex/eval.h"
#include "nsimplex/metrics.h"
#include "nsimplex/pivots.h"
#include "nsimplex/tables.h"

namespace nsimplex {

// ---------------------------------------------------------------------------
// Dataset files. All loaders throw DataError with the offending line or
// record number.

// Whitespace-separated reals, one vector per line; blank lines are ignored.
// A first line of exactly two integers is a count/dimension header (either
// order) when one of them equals the number of remaining rows and the other
// their width.
Dataset LoadAscii(const std::filesystem::path& path);
Dataset ParseAscii(std::istream& in);
// 17 significant digits, so values round-trip exactly.
void WriteAscii(const std::filesystem::path& path, const Dataset& data);

// binary_vecs: per record a little-endian int32 dimension followed by that
// many little-endian IEEE-754 float32 values. Values widen to double on
// load and narrow to float on write.
Dataset LoadBinaryVecs(const std::filesystem::path& path);
void WriteBinaryVecs(const std::filesystem::path& path, const Dataset& data);

// The same record layout with float64 values; used for persisted tables so
// that reloaded rows keep full precision.
Dataset LoadBinaryDvecs(const std::filesystem::path& path);
void WriteBinaryDvecs(const std::filesystem::path& path, const Dataset& data);

// Dispatches on extension: .vecs / .fvecs / .bin are binary_vecs, .dvecs is
// the float64 layout, anything else is ASCII.
Dataset LoadDataset(const std::filesystem::path& path);
void SaveDataset(const std::filesystem::path& path, const Dataset& data);

// Queries are the first floor(fraction * |file|) rows; the rest is data.
struct QuerySplit {
  Dataset queries;
  Dataset data;
};
QuerySplit SplitQueries(const Dataset& file, double query_fraction);

// ---------------------------------------------------------------------------
// Table persistence: <prefix>.dvecs holds the rows, <prefix>.meta a small
// text sidecar (kind, metric, pivots, seed, base checksum).

enum class TableKind { kLaesa, kApex };

struct TableMeta {
  TableKind kind = TableKind::kApex;
  Metric metric = kEuclidean;
  PivotSet pivots;
  std::size_t rows = 0;
  std::uint64_t base_checksum = 0;  // apex tables only
};

// FNV-1a over the base coordinates' bytes.
std::uint64_t BaseChecksum(const SimplexBase& base);

void SaveLaesaTable(const std::filesystem::path& prefix, const LaesaTable& table,
                    const Metric& metric);
void SaveApexTable(const std::filesystem::path& prefix, const ApexTable& table,
                   const Metric& metric);
TableMeta LoadTableMeta(const std::filesystem::path& prefix);
// Throw DataError if the sidecar kind does not match.
LaesaTable LoadLaesaTable(const std::filesystem::path& prefix);
// Rebuilds the base from the stored pivots and checks it against the
// stored checksum.
ApexTable LoadApexTable(const std::filesystem::path& prefix);

// ---------------------------------------------------------------------------
// CSV reports (17 significant digits).
//
// bench:   mechanism,metric,dims,threshold,queries,mean_original_calls,
//          mean_surrogate_calls,mean_results,elapsed_seconds
// distort: mapping,dims,r,D,pairs_sampled,zero_pairs_skipped

void WriteBenchCsv(std::ostream& out, const std::vector<BenchRow>& rows);
std::vector<BenchRow> ReadBenchCsv(std::istream& in);
void WriteDistortionCsv(std::ostream& out,
                        const std::vector<DistortionReport>& reports);
std::vector<DistortionReport> ReadDistortionCsv(std::istream& in);

}  // namespace nsimplex

#endif  // NSIMPLEX_IO_H_
