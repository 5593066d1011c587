// Copyright 2026 The attrsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <pthread.h>
#include <signal.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <map>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "attrsel/baselines.h"
#include "attrsel/dataset.h"
#include "attrsel/import.h"
#include "attrsel/measures.h"
#include "attrsel/report.h"
#include "attrsel/service.h"
#include "attrsel/trace.h"

#ifndef ATTRSEL_MAPPINGS_DIR
#define ATTRSEL_MAPPINGS_DIR "data/mappings"
#endif

namespace attrsel {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string dataset;
  std::string metadata;
  std::string method = "fpselect";
  double threshold = ExplorationConfig{}.threshold_alpha;
  int budget = 1;
  int paths = 1;
  std::string weights;
  bool no_pruning = false;
  std::string trace;
  std::string attributes;
  bool json = false;

  std::string mapping;
  std::string source;
  std::string output;

  int port = 8080;
  std::string host = "127.0.0.1";
  std::string datasets_dir;
  std::string traces_dir = "traces";
};

int Fail(std::ostream& err, const absl::Status& status) {
  err << "error: " << status.message() << "\n";
  return kExitInputError;
}

std::string DatasetPath(const std::string& arg) {
  std::error_code ec;
  if (fs::exists(arg, ec)) return arg;
  if (const char* dir = std::getenv(kDatasetsDirEnv); dir != nullptr) {
    for (const std::string& name : {arg, arg + ".csv"}) {
      const fs::path candidate = fs::path(dir) / name;
      if (fs::exists(candidate, ec)) return candidate.string();
    }
  }
  return arg;
}

// The explicit --metadata file, else a <stem>.meta sidecar if present.
std::string MetadataPath(const std::string& dataset_path,
                         const std::string& explicit_path) {
  if (!explicit_path.empty()) return explicit_path;
  fs::path sidecar(dataset_path);
  sidecar.replace_extension(".meta");
  std::error_code ec;
  return fs::exists(sidecar, ec) ? sidecar.string() : "";
}

absl::StatusOr<Dataset> LoadDataset(const Options& o) {
  if (o.dataset.empty()) {
    return absl::InvalidArgumentError("--dataset is required");
  }
  const std::string path = DatasetPath(o.dataset);
  return LoadCsv(path, MetadataPath(path, o.metadata));
}

absl::StatusOr<ExplorationConfig> BuildConfig(const Options& o) {
  ExplorationConfig config;
  const auto method = ParseMethod(o.method);
  if (!method) {
    return absl::InvalidArgumentError(
        absl::StrCat("InvalidConfig: unknown method '", o.method, "'"));
  }
  config.method = *method;
  config.threshold_alpha = o.threshold;
  config.submission_budget = o.budget;
  config.beam_width = o.paths;
  config.pruning = !o.no_pruning;
  if (!o.weights.empty()) {
    auto weights = ParseWeights(o.weights);
    if (!weights.ok()) return weights.status();
    config.weights = *weights;
  }
  if (auto status = ValidateConfig(config); !status.ok()) return status;
  return config;
}

void PrintJson(std::ostream& out, const OrderedJson& json) {
  out << json.dump(2) << "\n";
}

void PrintSelection(std::ostream& out, const SelectionResult& result,
                    const std::vector<std::string>& names) {
  out << "method:       " << MethodName(result.method) << "\n";
  if (result.best) {
    out << "selected:     " << FormatSet(result.best->set, names) << "\n";
    out << absl::StrFormat("cost:         %.4f\n", result.best->cost);
    out << absl::StrFormat("sensitivity:  %.4f\n", result.best->sensitivity);
  } else {
    out << "selected:     none (threshold unreachable)\n";
    out << absl::StrFormat("full set sensitivity: %.4f\n",
                           result.full_set_sensitivity.value_or(1.0));
  }
  out << "explored:     " << result.explored_count << "\n";
  out << "pruned:       " << result.pruned_count << "\n";
  out << "steps:        " << result.steps << "\n";
}

int SelectionExit(const SelectionResult& result, double alpha,
                  std::ostream& err) {
  const absl::Status status = ThresholdStatus(result, alpha);
  if (status.ok()) return kExitOk;
  err << "error: " << status.message() << "\n";
  return kExitThresholdUnreachable;
}

int CmdSelect(const Options& o, std::ostream& out, std::ostream& err) {
  auto dataset = LoadDataset(o);
  if (!dataset.ok()) return Fail(err, dataset.status());
  auto config = BuildConfig(o);
  if (!config.ok()) return Fail(err, config.status());
  MeasureEngine engine(*dataset);
  CollectingTraceSink sink;
  auto result = RunSelection(engine, *config, sink);
  if (!result.ok()) return Fail(err, result.status());
  if (!o.trace.empty()) {
    if (auto status = WriteTrace(sink.events(), o.trace); !status.ok()) {
      return Fail(err, status);
    }
  }
  if (o.json) {
    PrintJson(out, SelectionToJson(*result, *dataset));
  } else {
    PrintSelection(out, *result, AttributeNames(*dataset));
  }
  return SelectionExit(*result, config->threshold_alpha, err);
}

int CmdEvaluate(const Options& o, std::ostream& out, std::ostream& err) {
  auto dataset = LoadDataset(o);
  if (!dataset.ok()) return Fail(err, dataset.status());
  auto config = BuildConfig(o);
  if (!config.ok()) return Fail(err, config.status());
  std::vector<std::string> names =
      absl::StrSplit(o.attributes, ',', absl::SkipWhitespace());
  for (std::string& name : names) {
    name = std::string(absl::StripAsciiWhitespace(name));
  }
  auto set = ResolveAttributes(*dataset, names);
  if (!set.ok()) return Fail(err, set.status());
  MeasureEngine engine(*dataset);
  const AttributeSetProperties p = engine.Properties(*set, *config);
  if (o.json) {
    PrintJson(out, PropertiesToJson(p, *dataset));
    return kExitOk;
  }
  out << "attributes:   " << FormatSet(*set, *dataset) << "\n";
  out << absl::StrFormat("cost:         %.4f\n", p.evaluation.cost);
  out << absl::StrFormat("sensitivity:  %.4f\n", p.evaluation.sensitivity);
  out << "satisfying:   " << (p.evaluation.satisfying ? "yes" : "no") << "\n";
  out << absl::StrFormat("entropy:      %.4f bits\n", p.entropy_bits);
  out << absl::StrFormat("unicity:      %.4f\n", p.unicity);
  out << absl::StrFormat("stability:    %.4f\n", p.stability);
  out << "most common fingerprints:\n";
  for (const ProjectedClass& row : p.sample) {
    out << absl::StrFormat("  %6d  %s\n", row.count,
                           absl::StrJoin(row.values, " | "));
  }
  return kExitOk;
}

int CmdCompare(const Options& o, std::ostream& out, std::ostream& err) {
  auto dataset = LoadDataset(o);
  if (!dataset.ok()) return Fail(err, dataset.status());
  auto config = BuildConfig(o);
  if (!config.ok()) return Fail(err, config.status());
  MeasureEngine engine(*dataset);
  const std::vector<ComparisonRow> rows = CompareMethods(engine, *config);
  if (o.json) {
    PrintJson(out, ComparisonToJson(rows, *dataset));
  } else {
    out << FormatComparison(rows, *dataset);
  }
  // Exit 2 only when no method reached the threshold; errors beat that.
  bool any_ok = false;
  for (const ComparisonRow& row : rows) {
    if (!row.status.ok() && !row.result) return Fail(err, row.status);
    any_ok = any_ok || row.status.ok();
  }
  if (any_ok) return kExitOk;
  err << "error: " << rows.front().status.message() << "\n";
  return kExitThresholdUnreachable;
}

struct StepStats {
  int evaluated = 0;
  int satisfying = 0;
  int pruned = 0;
  int beam = 0;
  std::optional<double> best_cost;
};

std::map<int, StepStats> PerStep(const std::vector<TraceEvent>& events) {
  std::map<int, StepStats> steps;
  std::optional<double> best;
  for (const TraceEvent& event : events) {
    StepStats& s = steps[event.step];
    if (const auto* e = std::get_if<EvaluateEvent>(&event.payload)) {
      ++s.evaluated;
      if (e->node.satisfying) ++s.satisfying;
    } else if (std::holds_alternative<PruneEvent>(event.payload)) {
      ++s.pruned;
    } else if (const auto* e = std::get_if<BeamEvent>(&event.payload)) {
      s.beam = static_cast<int>(e->sets.size());
    } else if (const auto* e = std::get_if<BestEvent>(&event.payload)) {
      best = e->cost;
    }
    s.best_cost = best;
  }
  return steps;
}

int CmdReplay(const Options& o, std::ostream& out, std::ostream& err) {
  auto events = ReadTrace(o.trace);
  if (!events.ok()) return Fail(err, events.status());
  const auto& start = std::get<StartEvent>(events->front().payload);
  if (!o.dataset.empty()) {
    auto dataset = LoadDataset(o);
    if (!dataset.ok()) return Fail(err, dataset.status());
    if (auto status = CheckTraceDataset(*events, *dataset); !status.ok()) {
      return Fail(err, status);
    }
  }
  auto result = Summarize(*events);
  if (!result.ok()) return Fail(err, result.status());
  const std::map<int, StepStats> steps = PerStep(*events);

  if (o.json) {
    OrderedJson report = SelectionToJson(*result, start.attributes);
    OrderedJson per_step = OrderedJson::array();
    for (const auto& [step, s] : steps) {
      OrderedJson row;
      row["step"] = step;
      row["evaluated"] = s.evaluated;
      row["satisfying"] = s.satisfying;
      row["pruned"] = s.pruned;
      row["beam"] = s.beam;
      row["best_cost"] =
          s.best_cost ? OrderedJson(*s.best_cost) : OrderedJson(nullptr);
      per_step.push_back(std::move(row));
    }
    report["per_step"] = std::move(per_step);
    PrintJson(out, report);
  } else {
    PrintSelection(out, *result, start.attributes);
    out << "\nstep  evaluated  satisfying  pruned  beam  best cost\n";
    for (const auto& [step, s] : steps) {
      out << absl::StrFormat(
          "%4d  %9d  %10d  %6d  %4d  %s\n", step, s.evaluated, s.satisfying,
          s.pruned, s.beam,
          s.best_cost ? absl::StrFormat("%.4f", *s.best_cost) : "-");
    }
  }
  return SelectionExit(*result, start.config.threshold_alpha, err);
}

int CmdDatasetStats(const Options& o, std::ostream& out, std::ostream& err) {
  auto dataset = LoadDataset(o);
  if (!dataset.ok()) return Fail(err, dataset.status());
  const DatasetStats stats = ComputeStats(*dataset);
  if (o.json) {
    PrintJson(out, StatsToJson(stats));
    return kExitOk;
  }
  out << "attributes:   " << stats.n_attributes << "\n";
  out << "browsers:     " << stats.n_browsers << "\n";
  out << "records:      " << stats.n_records << "\n";
  out << "distinct fingerprints: " << stats.distinct_full_fingerprints << "\n";
  out << absl::StrFormat("unicity:      %.4f\n", stats.unicity_rate);
  return kExitOk;
}

// A bare name such as "fpstalker" selects a bundled mapping.
std::string MappingPath(const std::string& arg) {
  std::error_code ec;
  if (fs::exists(arg, ec)) return arg;
  const fs::path bundled = fs::path(ATTRSEL_MAPPINGS_DIR) / (arg + ".map");
  return fs::exists(bundled, ec) ? bundled.string() : arg;
}

int CmdDatasetImport(const Options& o, std::ostream& out, std::ostream& err) {
  auto mapping = LoadColumnMapping(MappingPath(o.mapping));
  if (!mapping.ok()) return Fail(err, mapping.status());
  if (auto status = ImportExternal(o.source, *mapping, o.output);
      !status.ok()) {
    return Fail(err, status);
  }
  auto dataset = LoadCsv(o.output);
  if (!dataset.ok()) return Fail(err, dataset.status());
  const DatasetStats stats = ComputeStats(*dataset);
  if (o.json) {
    OrderedJson report;
    report["output"] = o.output;
    report["stats"] = StatsToJson(stats);
    PrintJson(out, report);
  } else {
    out << "wrote " << o.output << ": " << stats.n_records << " records, "
        << stats.n_browsers << " browsers, " << stats.n_attributes
        << " attributes\n";
  }
  return kExitOk;
}

int CmdServe(const Options& o, std::ostream& out, std::ostream& err) {
  std::string datasets_dir = o.datasets_dir;
  if (datasets_dir.empty()) {
    const char* env = std::getenv(kDatasetsDirEnv);
    datasets_dir = env != nullptr ? env : "data";
  }
  auto service = Service::Create({datasets_dir, o.traces_dir});
  if (!service.ok()) return Fail(err, service.status());
  if (auto status = (*service)->Bind(o.host, o.port); !status.ok()) {
    return Fail(err, status);
  }

  // SIGINT and SIGTERM are taken synchronously by a watcher thread, which
  // stops the server; blocked here so worker threads inherit the mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  sigset_t previous;
  pthread_sigmask(SIG_BLOCK, &signals, &previous);
  std::atomic<bool> done{false};
  Service* raw = service->get();
  std::thread watcher([&] {
    const timespec tick{0, 200'000'000};
    while (!done) {
      if (sigtimedwait(&signals, nullptr, &tick) > 0) {
        raw->Stop();
        return;
      }
    }
  });
  out << "serving on http://" << o.host << ":" << (*service)->port()
      << " (datasets " << datasets_dir << ", traces " << o.traces_dir << ")"
      << std::endl;
  const absl::Status status = (*service)->Serve();
  done = true;
  watcher.join();
  (*service)->Stop();
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);
  if (!status.ok()) return Fail(err, status);
  out << "stopped" << std::endl;
  return kExitOk;
}

void AddDatasetFlags(CLI::App* cmd, Options& o) {
  cmd->add_option("--dataset", o.dataset,
                  "Canonical CSV, or a name under $" +
                      std::string(kDatasetsDirEnv));
  cmd->add_option("--metadata", o.metadata,
                  "Collection-time sidecar (default: <dataset>.meta)");
}

void AddConfigFlags(CLI::App* cmd, Options& o, bool with_search) {
  cmd->add_option("--threshold", o.threshold, "Sensitivity threshold alpha");
  cmd->add_option("--budget", o.budget, "Submission budget");
  cmd->add_option("--weights", o.weights,
                  "size=F,instability=F,time=F,epsilon=F");
  if (with_search) {
    cmd->add_option("--paths", o.paths, "Beam width (fpselect)");
    cmd->add_flag("--no-pruning", o.no_pruning, "Disable pruning (fpselect)");
  }
  cmd->add_flag("--json", o.json, "Machine-readable output");
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Options o;
  CLI::App app("Browser fingerprint attribute selection", "attrsel");
  app.require_subcommand(1);

  CLI::App* select = app.add_subcommand("select", "Run a selection method");
  AddDatasetFlags(select, o);
  select->add_option("--method", o.method, "fpselect | entropy | cond-entropy");
  AddConfigFlags(select, o, true);
  select->add_option("--trace", o.trace, "Write the execution trace here");

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Properties of one attribute set");
  AddDatasetFlags(evaluate, o);
  evaluate->add_option("--attributes", o.attributes,
                       "Comma-separated attribute names");
  AddConfigFlags(evaluate, o, false);

  CLI::App* compare = app.add_subcommand("compare", "Run all three methods");
  AddDatasetFlags(compare, o);
  AddConfigFlags(compare, o, true);

  CLI::App* replay = app.add_subcommand("replay", "Summarize a trace");
  replay->add_option("--trace", o.trace, "Trace file")->required();
  replay->add_option("--dataset", o.dataset,
                     "Check the trace was recorded on this dataset");
  replay->add_option("--metadata", o.metadata, "Collection-time sidecar");
  replay->add_flag("--json", o.json, "Machine-readable output");

  CLI::App* dataset = app.add_subcommand("dataset", "Dataset utilities");
  dataset->require_subcommand(1);
  CLI::App* stats = dataset->add_subcommand("stats", "Dataset statistics");
  stats->add_option("dataset", o.dataset, "Canonical CSV")->required();
  stats->add_option("--metadata", o.metadata, "Collection-time sidecar");
  stats->add_flag("--json", o.json, "Machine-readable output");
  CLI::App* import =
      dataset->add_subcommand("import", "Convert a source CSV to canonical");
  import->add_option("--mapping", o.mapping, "Mapping file or bundled name")
      ->required();
  import->add_option("source", o.source, "Source CSV")->required();
  import->add_option("output", o.output, "Canonical CSV to write")->required();
  import->add_flag("--json", o.json, "Machine-readable output");

  CLI::App* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", o.port, "TCP port");
  serve->add_option("--host", o.host, "Listen address");
  serve->add_option("--datasets-dir", o.datasets_dir,
                    "Hosted datasets (default: $" +
                        std::string(kDatasetsDirEnv) + " or ./data)");
  serve->add_option("--traces-dir", o.traces_dir, "Run traces");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  if (*select) return CmdSelect(o, out, err);
  if (*evaluate) return CmdEvaluate(o, out, err);
  if (*compare) return CmdCompare(o, out, err);
  if (*replay) return CmdReplay(o, out, err);
  if (*stats) return CmdDatasetStats(o, out, err);
  if (*import) return CmdDatasetImport(o, out, err);
  if (*serve) return CmdServe(o, out, err);
  return kExitInputError;
}

}  // namespace attrsel
