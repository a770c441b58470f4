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

#include "nsimplex/io.h"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string_view>

#include "nsimplex/errors.h"

namespace nsimplex {
namespace {

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::optional<double> ParseDouble(std::string_view token) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size()) return std::nullopt;
  return value;
}

std::optional<long long> ParseInteger(std::string_view token) {
  long long value = 0;
  const auto [end, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size()) return std::nullopt;
  return value;
}

// Shortest representation that parses back to the same double.
std::string FormatDouble(double v) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::ofstream OpenForWrite(const std::filesystem::path& path,
                           std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

std::uint32_t ReadLe32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 |
         static_cast<std::uint32_t>(p[3]) << 24;
}

std::uint64_t ReadLe64(const unsigned char* p) {
  return static_cast<std::uint64_t>(ReadLe32(p)) |
         static_cast<std::uint64_t>(ReadLe32(p + 4)) << 32;
}

void AppendLe32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void AppendLe64(std::string& out, std::uint64_t v) {
  AppendLe32(out, static_cast<std::uint32_t>(v));
  AppendLe32(out, static_cast<std::uint32_t>(v >> 32));
}

// Shared reader for the float32 and float64 record layouts.
template <typename Scalar>
Dataset LoadRecords(const std::filesystem::path& path) {
  const std::string bytes = ReadFile(path);
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::size_t size = bytes.size();
  std::size_t pos = 0;
  std::optional<std::size_t> dim;
  std::vector<double> values;
  std::size_t record = 0;
  while (pos < size) {
    if (size - pos < 4) {
      throw DataError(path.string() + ": truncated header in record " +
                      std::to_string(record));
    }
    const auto raw = static_cast<std::int32_t>(ReadLe32(p + pos));
    pos += 4;
    if (raw <= 0) {
      throw DataError(path.string() + ": non-positive dimension in record " +
                      std::to_string(record));
    }
    const auto d = static_cast<std::size_t>(raw);
    if (dim && *dim != d) {
      throw DataError(path.string() + ": record " + std::to_string(record) +
                      " has dimension " + std::to_string(d) + ", expected " +
                      std::to_string(*dim));
    }
    dim = d;
    if ((size - pos) / sizeof(Scalar) < d) {
      throw DataError(path.string() + ": truncated record " +
                      std::to_string(record));
    }
    for (std::size_t k = 0; k < d; ++k) {
      if constexpr (sizeof(Scalar) == 4) {
        values.push_back(std::bit_cast<float>(ReadLe32(p + pos)));
      } else {
        values.push_back(std::bit_cast<double>(ReadLe64(p + pos)));
      }
      pos += sizeof(Scalar);
    }
    ++record;
  }
  if (!dim) return Dataset();
  return Dataset(*dim, std::move(values));
}

template <typename Scalar>
void WriteRecords(const std::filesystem::path& path, const Dataset& data) {
  std::string bytes;
  bytes.reserve(data.size() * (4 + data.dim() * sizeof(Scalar)));
  for (std::size_t i = 0; i < data.size(); ++i) {
    AppendLe32(bytes, static_cast<std::uint32_t>(data.dim()));
    for (double v : data[i]) {
      if constexpr (sizeof(Scalar) == 4) {
        AppendLe32(bytes, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
      } else {
        AppendLe64(bytes, std::bit_cast<std::uint64_t>(v));
      }
    }
  }
  std::ofstream out = OpenForWrite(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("failed writing " + path.string());
}

std::filesystem::path WithSuffix(const std::filesystem::path& prefix,
                                 const char* suffix) {
  return std::filesystem::path(prefix.string() + suffix);
}

std::string_view TableKindName(TableKind kind) {
  return kind == TableKind::kLaesa ? "laesa" : "apex";
}

void WriteMeta(const std::filesystem::path& prefix, TableKind kind,
               const Metric& metric, const PivotSet& pivots, std::size_t rows,
               std::uint64_t checksum) {
  std::ofstream out = OpenForWrite(WithSuffix(prefix, ".meta"));
  out << "nsimplex-table 1\n";
  out << "kind " << TableKindName(kind) << "\n";
  out << "metric " << metric.name() << "\n";
  out << "pivot_strategy " << PivotStrategyName(pivots.strategy) << "\n";
  out << "seed " << pivots.seed << "\n";
  out << "rows " << rows << "\n";
  out << "dims " << pivots.size() << "\n";
  out << "pivot_indices";
  for (std::size_t i : pivots.indices) out << ' ' << i;
  out << "\n";
  char hex[24];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(checksum));
  out << "base_checksum " << hex << "\n";
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    out << "pivot";
    for (double v : pivots.points[i]) out << ' ' << FormatDouble(v);
    out << "\n";
  }
  if (!out) throw DataError("failed writing table sidecar for " + prefix.string());
}

}  // namespace

Dataset ParseAscii(std::istream& in) {
  struct Line {
    std::size_t number;
    std::vector<std::string_view> tokens;
  };
  std::vector<std::string> storage;
  std::vector<Line> lines;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    storage.push_back(std::move(text));
  }
  number = 0;
  for (const std::string& s : storage) {
    ++number;
    auto tokens = SplitWhitespace(s);
    if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
  }
  if (lines.empty()) return Dataset();

  std::size_t first = 0;
  if (lines.size() >= 2 && lines[0].tokens.size() == 2) {
    const auto a = ParseInteger(lines[0].tokens[0]);
    const auto b = ParseInteger(lines[0].tokens[1]);
    const auto remaining = static_cast<long long>(lines.size() - 1);
    const auto width = static_cast<long long>(lines[1].tokens.size());
    if (a && b &&
        ((*a == remaining && *b == width) || (*b == remaining && *a == width))) {
      first = 1;
    }
  }

  const std::size_t dim = lines[first].tokens.size();
  std::vector<double> values;
  values.reserve((lines.size() - first) * dim);
  for (std::size_t li = first; li < lines.size(); ++li) {
    const Line& line = lines[li];
    if (line.tokens.size() != dim) {
      throw DataError("line " + std::to_string(line.number) + ": expected " +
                      std::to_string(dim) + " values, found " +
                      std::to_string(line.tokens.size()));
    }
    for (std::string_view token : line.tokens) {
      const auto v = ParseDouble(token);
      if (!v) {
        throw DataError("line " + std::to_string(line.number) +
                        ": non-numeric token '" + std::string(token) + "'");
      }
      values.push_back(*v);
    }
  }
  return Dataset(dim, std::move(values));
}

Dataset LoadAscii(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return ParseAscii(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void WriteAscii(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out = OpenForWrite(path);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto row = data[i];
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k > 0) out << ' ';
      out << FormatDouble(row[k]);
    }
    out << '\n';
  }
  if (!out) throw DataError("failed writing " + path.string());
}

Dataset LoadBinaryVecs(const std::filesystem::path& path) {
  return LoadRecords<float>(path);
}

void WriteBinaryVecs(const std::filesystem::path& path, const Dataset& data) {
  WriteRecords<float>(path, data);
}

Dataset LoadBinaryDvecs(const std::filesystem::path& path) {
  return LoadRecords<double>(path);
}

void WriteBinaryDvecs(const std::filesystem::path& path, const Dataset& data) {
  WriteRecords<double>(path, data);
}

namespace {

enum class FileFormat { kAscii, kVecs, kDvecs };

FileFormat FormatOf(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".vecs" || ext == ".fvecs" || ext == ".bin") return FileFormat::kVecs;
  if (ext == ".dvecs") return FileFormat::kDvecs;
  return FileFormat::kAscii;
}

}  // namespace

Dataset LoadDataset(const std::filesystem::path& path) {
  switch (FormatOf(path)) {
    case FileFormat::kVecs:
      return LoadBinaryVecs(path);
    case FileFormat::kDvecs:
      return LoadBinaryDvecs(path);
    case FileFormat::kAscii:
      break;
  }
  return LoadAscii(path);
}

void SaveDataset(const std::filesystem::path& path, const Dataset& data) {
  switch (FormatOf(path)) {
    case FileFormat::kVecs:
      return WriteBinaryVecs(path, data);
    case FileFormat::kDvecs:
      return WriteBinaryDvecs(path, data);
    case FileFormat::kAscii:
      break;
  }
  WriteAscii(path, data);
}

QuerySplit SplitQueries(const Dataset& file, double query_fraction) {
  if (!(query_fraction >= 0.0 && query_fraction < 1.0)) {
    throw UsageError("query fraction must be in [0, 1)");
  }
  const auto cut = static_cast<std::size_t>(
      std::floor(query_fraction * static_cast<double>(file.size())));
  return {file.Slice(0, cut), file.Slice(cut, file.size())};
}

std::uint64_t BaseChecksum(const SimplexBase& base) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < base.n(); ++i) {
    for (double v : base.row(i)) {
      const auto bits = std::bit_cast<std::uint64_t>(v);
      for (int b = 0; b < 8; ++b) {
        hash ^= (bits >> (8 * b)) & 0xff;
        hash *= 0x100000001b3ULL;
      }
    }
  }
  return hash;
}

void SaveLaesaTable(const std::filesystem::path& prefix, const LaesaTable& table,
                    const Metric& metric) {
  WriteBinaryDvecs(WithSuffix(prefix, ".dvecs"), table.rows());
  WriteMeta(prefix, TableKind::kLaesa, metric, table.pivots(), table.size(), 0);
}

void SaveApexTable(const std::filesystem::path& prefix, const ApexTable& table,
                   const Metric& metric) {
  WriteBinaryDvecs(WithSuffix(prefix, ".dvecs"), table.rows());
  WriteMeta(prefix, TableKind::kApex, metric, table.pivots(), table.size(),
            BaseChecksum(table.base()));
}

TableMeta LoadTableMeta(const std::filesystem::path& prefix) {
  const auto path = WithSuffix(prefix, ".meta");
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  TableMeta meta;
  std::string line;
  std::size_t number = 0;
  std::optional<std::size_t> dims;
  std::vector<double> pivot_values;
  auto fail = [&](const std::string& why) {
    throw DataError(path.string() + ":" + std::to_string(number) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++number;
    const auto tokens = SplitWhitespace(line);
    if (tokens.empty()) continue;
    const std::string_view key = tokens[0];
    auto single = [&]() -> std::string_view {
      if (tokens.size() != 2) fail("expected one value for " + std::string(key));
      return tokens[1];
    };
    if (number == 1) {
      if (key != "nsimplex-table") fail("not an nsimplex table sidecar");
    } else if (key == "kind") {
      const auto v = single();
      if (v == "laesa") {
        meta.kind = TableKind::kLaesa;
      } else if (v == "apex") {
        meta.kind = TableKind::kApex;
      } else {
        fail("unknown table kind");
      }
    } else if (key == "metric") {
      const auto m = ParseMetric(single());
      if (!m) fail("unknown metric");
      meta.metric = *m;
    } else if (key == "pivot_strategy") {
      const auto s = ParsePivotStrategy(single());
      if (!s) fail("unknown pivot strategy");
      meta.pivots.strategy = *s;
    } else if (key == "seed") {
      const auto v = single();
      std::uint64_t seed = 0;
      if (std::from_chars(v.data(), v.data() + v.size(), seed).ec != std::errc()) {
        fail("bad seed");
      }
      meta.pivots.seed = seed;
    } else if (key == "rows") {
      const auto v = ParseInteger(single());
      if (!v || *v < 0) fail("bad row count");
      meta.rows = static_cast<std::size_t>(*v);
    } else if (key == "dims") {
      const auto v = ParseInteger(single());
      if (!v || *v <= 0) fail("bad dims");
      dims = static_cast<std::size_t>(*v);
    } else if (key == "pivot_indices") {
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        const auto v = ParseInteger(tokens[k]);
        if (!v || *v < 0) fail("bad pivot index");
        meta.pivots.indices.push_back(static_cast<std::size_t>(*v));
      }
    } else if (key == "base_checksum") {
      const auto v = single();
      std::uint64_t sum = 0;
      if (std::from_chars(v.data(), v.data() + v.size(), sum, 16).ec != std::errc()) {
        fail("bad checksum");
      }
      meta.base_checksum = sum;
    } else if (key == "pivot") {
      if (!dims) fail("pivot before dims");
      if (meta.pivots.points.dim() == 0) meta.pivots.points = Dataset(tokens.size() - 1);
      std::vector<double> row;
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        const auto v = ParseDouble(tokens[k]);
        if (!v) fail("bad pivot value");
        row.push_back(*v);
      }
      if (row.size() != meta.pivots.points.dim()) fail("ragged pivot rows");
      meta.pivots.points.Append(row);
    } else {
      fail("unknown key '" + std::string(key) + "'");
    }
  }
  if (!dims || meta.pivots.size() != *dims) {
    throw DataError(path.string() + ": pivot count does not match dims");
  }
  return meta;
}

LaesaTable LoadLaesaTable(const std::filesystem::path& prefix) {
  TableMeta meta = LoadTableMeta(prefix);
  if (meta.kind != TableKind::kLaesa) {
    throw DataError(prefix.string() + " is not a LAESA table");
  }
  Dataset rows = LoadBinaryDvecs(WithSuffix(prefix, ".dvecs"));
  if (rows.size() != meta.rows) throw DataError("LAESA row count mismatch");
  return LaesaTable::FromRows(std::move(meta.pivots), std::move(rows));
}

ApexTable LoadApexTable(const std::filesystem::path& prefix) {
  TableMeta meta = LoadTableMeta(prefix);
  if (meta.kind != TableKind::kApex) {
    throw DataError(prefix.string() + " is not an apex table");
  }
  SimplexBase base = SimplexBase::FromPivots(meta.pivots.points, meta.metric);
  if (BaseChecksum(base) != meta.base_checksum) {
    throw DataError(prefix.string() + ": rebuilt simplex base fails checksum");
  }
  Dataset rows = LoadBinaryDvecs(WithSuffix(prefix, ".dvecs"));
  if (rows.size() != meta.rows) throw DataError("apex row count mismatch");
  return ApexTable::FromRows(std::move(base), std::move(meta.pivots),
                             std::move(rows));
}

namespace {

constexpr std::string_view kBenchHeader =
    "mechanism,metric,dims,threshold,queries,mean_original_calls,"
    "mean_surrogate_calls,mean_results,elapsed_seconds";
constexpr std::string_view kDistortHeader =
    "mapping,dims,r,D,pairs_sampled,zero_pairs_skipped";

double FieldDouble(std::string_view field, std::size_t line) {
  const auto v = ParseDouble(field);
  if (!v) throw DataError("csv line " + std::to_string(line) + ": bad number");
  return *v;
}

long long FieldInteger(std::string_view field, std::size_t line) {
  const auto v = ParseInteger(field);
  if (!v) throw DataError("csv line " + std::to_string(line) + ": bad integer");
  return *v;
}

template <typename Row, typename ParseRow>
std::vector<Row> ReadCsv(std::istream& in, std::string_view header,
                         std::size_t columns, ParseRow parse_row) {
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw DataError("csv header mismatch; expected " + std::string(header));
  }
  std::vector<Row> rows;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto fields = SplitCommas(line);
    if (fields.size() != columns) {
      throw DataError("csv line " + std::to_string(number) + ": expected " +
                      std::to_string(columns) + " fields");
    }
    rows.push_back(parse_row(fields, number));
  }
  return rows;
}

}  // namespace

void WriteBenchCsv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kBenchHeader << '\n';
  for (const BenchRow& r : rows) {
    out << r.mechanism << ',' << r.metric << ',' << r.dims << ','
        << FormatDouble(r.threshold) << ',' << r.queries << ','
        << FormatDouble(r.mean_original_calls) << ','
        << FormatDouble(r.mean_surrogate_calls) << ','
        << FormatDouble(r.mean_results) << ','
        << FormatDouble(r.elapsed_seconds) << '\n';
  }
}

std::vector<BenchRow> ReadBenchCsv(std::istream& in) {
  return ReadCsv<BenchRow>(
      in, kBenchHeader, 9,
      [](const std::vector<std::string_view>& f, std::size_t line) {
        BenchRow r;
        r.mechanism = std::string(f[0]);
        r.metric = std::string(f[1]);
        r.dims = static_cast<int>(FieldInteger(f[2], line));
        r.threshold = FieldDouble(f[3], line);
        r.queries = static_cast<std::size_t>(FieldInteger(f[4], line));
        r.mean_original_calls = FieldDouble(f[5], line);
        r.mean_surrogate_calls = FieldDouble(f[6], line);
        r.mean_results = FieldDouble(f[7], line);
        r.elapsed_seconds = FieldDouble(f[8], line);
        return r;
      });
}

void WriteDistortionCsv(std::ostream& out,
                        const std::vector<DistortionReport>& reports) {
  out << kDistortHeader << '\n';
  for (const DistortionReport& r : reports) {
    out << r.mapping << ',' << r.dims << ',' << FormatDouble(r.r) << ','
        << FormatDouble(r.distortion) << ',' << r.pairs_sampled << ','
        << r.zero_pairs_skipped << '\n';
  }
}

std::vector<DistortionReport> ReadDistortionCsv(std::istream& in) {
  return ReadCsv<DistortionReport>(
      in, kDistortHeader, 6,
      [](const std::vector<std::string_view>& f, std::size_t line) {
        DistortionReport r;
        r.mapping = std::string(f[0]);
        r.dims = static_cast<int>(FieldInteger(f[1], line));
        r.r = FieldDouble(f[2], line);
        r.distortion = FieldDouble(f[3], line);
        r.pairs_sampled = static_cast<std::size_t>(FieldInteger(f[4], line));
        r.zero_pairs_skipped = static_cast<std::size_t>(FieldInteger(f[5], line));
        r.unbounded = std::isinf(r.distortion);
        return r;
      });
}

}  // namespace nsimplex
