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

#include "cli.h"

#include <algorithm>
#include <cstdint>
#include <exception>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nsimplex/dataset.h"
#include "nsimplex/errors.h"
#include "nsimplex/eval.h"
#include "nsimplex/htree.h"
#include "nsimplex/io.h"
#include "nsimplex/metrics.h"
#include "nsimplex/pivots.h"
#include "nsimplex/search.h"
#include "nsimplex/synthetic.h"
#include "nsimplex/tables.h"

namespace nsimplex::cli {
namespace {

struct Options {
  // Shared flags.
  std::string data;
  std::string metric = "euclidean";
  std::string pivots = "random";
  std::string pca_placement = "scaled";
  std::uint64_t seed = 0;
  double query_fraction = 0.1;
  std::string out;
  std::vector<int> dims;
  std::vector<double> thresholds;
  std::vector<std::string> mechanisms;
  std::string pivot_file;
  std::size_t leaf_capacity = HyperplaneTree::kDefaultLeafCapacity;

  // gen
  std::string kind = "uniform";
  std::size_t count = 0;
  std::size_t intrinsic = 8;

  // build
  std::string structure;

  // query
  std::optional<std::size_t> query_index;
  std::vector<double> query_vector;
  std::string table;

  // bench / distort
  std::size_t max_queries = 0;
  std::vector<std::string> reducers;
  std::size_t pairs = kDefaultDistortionPairs;
};

Metric ToMetric(const std::string& name) {
  const auto metric = ParseMetric(name);
  if (!metric) throw UsageError("unknown metric '" + name + "'");
  return *metric;
}

PivotStrategy ToStrategy(const std::string& name) {
  const auto strategy = ParsePivotStrategy(name);
  if (!strategy) throw UsageError("unknown pivot strategy '" + name + "'");
  return *strategy;
}

Mechanism ToMechanism(const std::string& name) {
  const auto mechanism = ParseMechanism(name);
  if (!mechanism) throw UsageError("unknown mechanism '" + name + "'");
  return *mechanism;
}

std::size_t SingleDims(const Options& o, std::size_t fallback) {
  if (o.dims.empty()) return fallback;
  if (o.dims.size() != 1) throw UsageError("expected a single --dims value");
  if (o.dims[0] <= 0) throw UsageError("--dims must be positive");
  return static_cast<std::size_t>(o.dims[0]);
}

std::string JoinIds(const std::vector<std::size_t>& ids) {
  std::ostringstream s;
  for (std::size_t i = 0; i < ids.size(); ++i) s << (i ? " " : "") << ids[i];
  return s.str();
}

// The file split into a query prefix and the indexed remainder, both
// prepared for the metric. `offset` converts data positions to file rows.
struct Loaded {
  Dataset file;
  Dataset queries;
  std::shared_ptr<const Dataset> data;
  std::size_t offset = 0;
};

Loaded Load(const Options& o, const Metric& metric) {
  if (o.data.empty()) throw UsageError("--data is required");
  Loaded loaded;
  loaded.file = LoadDataset(o.data);
  if (loaded.file.size() == 0) throw DataError(o.data + " holds no vectors");
  QuerySplit split = SplitQueries(loaded.file, o.query_fraction);
  if (split.data.size() == 0) throw DataError("no data rows after the query split");
  loaded.offset = split.queries.size();
  loaded.queries = PrepareDataset(metric, std::move(split.queries));
  loaded.data =
      std::make_shared<const Dataset>(PrepareDataset(metric, std::move(split.data)));
  return loaded;
}

PcaPlacement ToPlacement(const std::string& name) {
  const auto placement = ParsePcaPlacement(name);
  if (!placement) throw UsageError("unknown PCA placement '" + name + "'");
  return *placement;
}

PivotSet ChoosePivots(const Options& o, const Dataset& data, std::size_t n,
                      const Metric& metric) {
  if (!o.pivot_file.empty()) {
    PivotSet set;
    set.strategy = ToStrategy(o.pivots);
    set.seed = o.seed;
    set.points = PrepareDataset(metric, LoadDataset(o.pivot_file));
    if (set.points.dim() != data.dim()) {
      throw DataError("pivot file dimension does not match the data");
    }
    if (n < set.size()) set = set.Prefix(n);
    if (n > set.size()) throw UsageError("pivot file holds fewer than --dims pivots");
    return set;
  }
  switch (ToStrategy(o.pivots)) {
    case PivotStrategy::kRandom:
      return SelectRandomPivots(data, n, o.seed, metric);
    case PivotStrategy::kPca:
      return SelectPcaPivots(data, n, metric, ToPlacement(o.pca_placement));
  }
  throw UsageError("unknown pivot strategy");
}

void PrintStats(std::ostream& out, const QueryStats& stats) {
  out << "results " << stats.results << "\n"
      << "original_calls " << stats.original_calls << "\n"
      << "surrogate_calls " << stats.surrogate_calls << "\n"
      << "candidates " << stats.candidates << "\n"
      << "confirmed_without_recheck " << stats.confirmed_without_recheck << "\n"
      << "nodes_visited " << stats.nodes_visited << "\n";
}

// Writes to --out when given, otherwise to `fallback`.
template <typename WriteFn>
void EmitCsv(const Options& o, std::ostream& fallback, WriteFn write) {
  if (o.out.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw DataError("cannot write " + o.out);
  write(file);
  if (!file) throw DataError("failed writing " + o.out);
}

int RunGen(const Options& o, std::ostream& out) {
  if (o.out.empty()) throw UsageError("gen needs --out");
  if (o.count == 0) throw UsageError("gen needs a positive --count");
  const std::size_t dims = SingleDims(o, 0);
  if (dims == 0) throw UsageError("gen needs --dims");
  const auto kind = ParseSyntheticKind(o.kind);
  if (!kind) throw UsageError("unknown synthetic kind '" + o.kind + "'");
  Dataset data;
  switch (*kind) {
    case SyntheticKind::kUniform:
      data = GenerateUniform(o.count, dims, o.seed);
      break;
    case SyntheticKind::kHistogram:
      data = GenerateHistograms(o.count, dims, o.seed);
      break;
    case SyntheticKind::kLowRank:
      data = GenerateLowRank(o.count, dims, std::min(o.intrinsic, dims), o.seed);
      break;
  }
  SaveDataset(o.out, data);
  out << "wrote " << data.size() << " vectors of dimension " << data.dim()
      << " to " << o.out << "\n";
  return kExitOk;
}

int RunPivots(const Options& o, std::ostream& out) {
  if (o.out.empty()) throw UsageError("pivots needs --out");
  const Metric metric = ToMetric(o.metric);
  const Loaded loaded = Load(o, metric);
  const PivotSet set = ChoosePivots(o, *loaded.data, SingleDims(o, 20), metric);
  SaveDataset(o.out, set.points);
  std::vector<std::size_t> rows;
  for (std::size_t i : set.indices) rows.push_back(i + loaded.offset);
  out << "strategy " << PivotStrategyName(set.strategy) << "\n"
      << "pivots " << set.size() << "\n"
      << "seed " << set.seed << "\n"
      << "rows " << JoinIds(rows) << "\n";
  return kExitOk;
}

int RunBuild(const Options& o, std::ostream& out) {
  const Metric metric = ToMetric(o.metric);
  const Loaded loaded = Load(o, metric);
  const Dataset& data = *loaded.data;
  if (o.structure == "tree") {
    const HyperplaneTree tree(data, metric, o.leaf_capacity);
    out << "structure tree\n"
        << "objects " << tree.size() << "\n"
        << "nodes " << tree.nodes().size() << "\n"
        << "leaf_capacity " << tree.leaf_capacity() << "\n"
        << "build_distance_calls " << tree.build_distance_calls() << "\n";
    return kExitOk;
  }
  if (o.out.empty()) throw UsageError("build " + o.structure + " needs --out");
  PivotSet set = ChoosePivots(o, data, SingleDims(o, 20), metric);
  std::uint64_t calls = 0;
  if (o.structure == "laesa") {
    const LaesaTable table = LaesaTable::Build(data, std::move(set), metric, &calls);
    SaveLaesaTable(o.out, table, metric);
    out << "structure laesa\n";
  } else if (o.structure == "apex") {
    const ApexTable table = ApexTable::Build(data, std::move(set), metric, &calls);
    SaveApexTable(o.out, table, metric);
    out << "structure apex\n"
        << "min_base_altitude " << table.base().min_altitude() << "\n";
  } else {
    throw UsageError("build expects laesa, apex or tree");
  }
  out << "objects " << data.size() << "\n"
      << "pivots " << SingleDims(o, 20) << "\n"
      << "original_calls " << calls << "\n";
  return kExitOk;
}

int RunQuery(const Options& o, std::ostream& out) {
  const Metric metric = ToMetric(o.metric);
  if (o.thresholds.size() != 1) throw UsageError("query needs one --threshold");
  if (o.mechanisms.size() > 1) throw UsageError("query takes one --mechanism");
  const Mechanism mechanism =
      o.mechanisms.empty() ? Mechanism::kScan : ToMechanism(o.mechanisms[0]);
  const Loaded loaded = Load(o, metric);

  std::vector<double> query;
  if (o.query_index && !o.query_vector.empty()) {
    throw UsageError("give either --query-index or --query, not both");
  }
  if (o.query_index) {
    if (*o.query_index >= loaded.file.size()) {
      throw UsageError("--query-index is past the end of the file");
    }
    query = PrepareVector(metric, loaded.file[*o.query_index]);
  } else if (!o.query_vector.empty()) {
    if (o.query_vector.size() != loaded.file.dim()) {
      throw DataError("query vector has the wrong dimension");
    }
    query = PrepareVector(metric, o.query_vector);
  } else {
    throw UsageError("query needs --query-index or --query");
  }

  SearchIndex index(loaded.data, metric);
  if (!o.table.empty()) {
    const TableMeta meta = LoadTableMeta(o.table);
    if (meta.metric.kind() != metric.kind()) {
      throw UsageError("table was built for metric " + std::string(meta.metric.name()));
    }
    if (meta.kind == TableKind::kLaesa) {
      index.AdoptLaesa(LoadLaesaTable(o.table), o.leaf_capacity);
    } else {
      index.AdoptApex(LoadApexTable(o.table), o.leaf_capacity);
    }
    if (!index.IsBuilt(mechanism)) {
      throw UsageError("table does not serve mechanism " +
                       std::string(MechanismName(mechanism)));
    }
  } else if (mechanism == Mechanism::kTree) {
    index.BuildTree(o.leaf_capacity);
  } else if (UsesPivots(mechanism)) {
    PivotSet set = ChoosePivots(o, *loaded.data, SingleDims(o, 20), metric);
    if (mechanism == Mechanism::kLSeq || mechanism == Mechanism::kLRei) {
      index.BuildLaesa(std::move(set), o.leaf_capacity);
    } else {
      index.BuildApex(std::move(set), o.leaf_capacity);
    }
  }

  const QueryResult result = index.ExactRangeQuery(mechanism, query, o.thresholds[0]);
  for (ObjectId id : result.ids) out << "id " << id + loaded.offset << "\n";
  PrintStats(out, result.stats);
  return kExitOk;
}

int RunBench(const Options& o, std::ostream& out) {
  if (o.thresholds.empty()) throw UsageError("bench needs --threshold");
  const Metric metric = ToMetric(o.metric);
  Loaded loaded = Load(o, metric);
  if (loaded.queries.size() == 0) throw UsageError("bench needs a query prefix");
  BenchmarkConfig config;
  config.data = loaded.data;
  config.queries = o.max_queries > 0 && o.max_queries < loaded.queries.size()
                       ? loaded.queries.Slice(0, o.max_queries)
                       : std::move(loaded.queries);
  config.metric = metric;
  config.thresholds = o.thresholds;
  config.dims = o.dims.empty() ? std::vector<int>{4, 10, 20} : o.dims;
  if (!o.mechanisms.empty()) {
    config.mechanisms.clear();
    for (const std::string& m : o.mechanisms) config.mechanisms.push_back(ToMechanism(m));
  }
  config.pivot_strategy = ToStrategy(o.pivots);
  config.pca_placement = ToPlacement(o.pca_placement);
  config.seed = o.seed;
  config.leaf_capacity = o.leaf_capacity;
  const std::vector<BenchRow> rows = RunBenchmark(config);
  EmitCsv(o, out, [&](std::ostream& s) { WriteBenchCsv(s, rows); });
  return kExitOk;
}

int RunDistort(const Options& o, std::ostream& out) {
  const Metric metric = ToMetric(o.metric);
  const Loaded loaded = Load(o, metric);
  DistortionConfig config;
  config.metric = metric;
  config.dims = o.dims.empty() ? std::vector<int>{5, 10, 20, 40} : o.dims;
  if (o.reducers.empty()) {
    config.reducers = {Reducer::kNSimplexRandom, Reducer::kNSimplexPca,
                       Reducer::kPca, Reducer::kJl};
  } else {
    for (const std::string& name : o.reducers) {
      const auto reducer = ParseReducer(name);
      if (!reducer) throw UsageError("unknown reducer '" + name + "'");
      config.reducers.push_back(*reducer);
    }
  }
  config.max_pairs = o.pairs;
  config.seed = o.seed;
  config.pca_placement = ToPlacement(o.pca_placement);
  const std::vector<DistortionReport> reports = CompareReducers(*loaded.data, config);
  EmitCsv(o, out, [&](std::ostream& s) { WriteDistortionCsv(s, reports); });
  return kExitOk;
}

void AddData(CLI::App* sub, Options& o) {
  sub->add_option("--data", o.data, "Vector file (ASCII, .vecs or .dvecs)");
  sub->add_option("--metric", o.metric,
                  "euclidean, cosine, jensen-shannon, triangular or chebyshev");
  sub->add_option("--query-fraction", o.query_fraction,
                  "Leading fraction of the file used as queries")
      ->check(CLI::Range(0.0, 1.0));
}

void AddPivots(CLI::App* sub, Options& o) {
  sub->add_option("--pivots", o.pivots, "Pivot strategy: random or pca");
  sub->add_option("--pca-placement", o.pca_placement,
                  "PCA pivot points: scaled (mean + sd * axis) or unit (axes)");
  sub->add_option("--pivot-file", o.pivot_file, "Use pivots from this file");
  sub->add_option("--seed", o.seed, "Random seed");
}

}  // namespace

int CliMain(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  Options o;
  CLI::App app{"Exact metric range search with n-simplex projection", "nsimplex"};
  app.require_subcommand(1);

  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic dataset");
  gen->add_option("--kind", o.kind, "uniform, histogram or lowrank");
  gen->add_option("--count", o.count, "Number of vectors")->required();
  gen->add_option("--dims", o.dims, "Dimension (bins for histograms)")->required();
  gen->add_option("--intrinsic", o.intrinsic, "Intrinsic dimension for lowrank");
  gen->add_option("--seed", o.seed, "Random seed");
  gen->add_option("--out", o.out, "Output file")->required();

  CLI::App* pivots = app.add_subcommand("pivots", "Select and save pivots");
  AddData(pivots, o);
  AddPivots(pivots, o);
  pivots->add_option("--dims", o.dims, "Number of pivots");
  pivots->add_option("--out", o.out, "Output vector file")->required();

  CLI::App* build = app.add_subcommand("build", "Build a LAESA table, apex table or tree");
  build->add_option("structure", o.structure, "laesa, apex or tree")
      ->required()
      ->check(CLI::IsMember({"laesa", "apex", "tree"}));
  AddData(build, o);
  AddPivots(build, o);
  build->add_option("--dims", o.dims, "Number of pivots");
  build->add_option("--leaf-capacity", o.leaf_capacity, "Tree leaf capacity");
  build->add_option("--out", o.out, "Table path prefix");

  CLI::App* query = app.add_subcommand("query", "Run one exact range query");
  AddData(query, o);
  AddPivots(query, o);
  query->add_option("--dims", o.dims, "Number of pivots");
  query->add_option("--mechanism", o.mechanisms,
                    "scan, lseq, lrei, nseq, nrei or tree");
  query->add_option("--threshold", o.thresholds, "Search radius")->required();
  query->add_option("--query-index", o.query_index, "File row used as the query");
  query->add_option("--query", o.query_vector, "Comma-separated query vector")
      ->delimiter(',');
  query->add_option("--table", o.table, "Prefix of a saved LAESA or apex table");
  query->add_option("--leaf-capacity", o.leaf_capacity, "Tree leaf capacity");

  CLI::App* bench = app.add_subcommand("bench", "Run the mechanism grid and write CSV");
  AddData(bench, o);
  AddPivots(bench, o);
  bench->add_option("--dims", o.dims, "Pivot counts")->delimiter(',');
  bench->add_option("--threshold", o.thresholds, "Search radii")->delimiter(',');
  bench->add_option("--mechanism", o.mechanisms, "Mechanisms (default all)")
      ->delimiter(',');
  bench->add_option("--max-queries", o.max_queries, "Use at most this many queries");
  bench->add_option("--leaf-capacity", o.leaf_capacity, "Tree leaf capacity");
  bench->add_option("--out", o.out, "CSV path (default stdout)");

  CLI::App* distort = app.add_subcommand("distort", "Compare reducers and write CSV");
  AddData(distort, o);
  distort->add_option("--seed", o.seed, "Random seed");
  distort->add_option("--dims", o.dims, "Target dimensions")->delimiter(',');
  distort->add_option("--reducers", o.reducers,
                      "nsimplex-random, nsimplex-pca, pca, jl (default all)")
      ->delimiter(',');
  distort->add_option("--pairs", o.pairs, "Maximum sampled pairs");
  distort->add_option("--pca-placement", o.pca_placement,
                      "PCA pivot points for nsimplex-pca: scaled or unit");
  distort->add_option("--out", o.out, "CSV path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return RunGen(o, out);
    if (*pivots) return RunPivots(o, out);
    if (*build) return RunBuild(o, out);
    if (*query) return RunQuery(o, out);
    if (*bench) return RunBench(o, out);
    if (*distort) return RunDistort(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const NonEmbeddable& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const DegeneratePivots& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitUsage;
}

}  // namespace nsimplex::cli
