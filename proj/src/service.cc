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

#include "attrsel/service.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "attrsel/baselines.h"
#include "attrsel/dataset.h"
#include "attrsel/measures.h"
#include "attrsel/report.h"
#include "attrsel/text_formats.h"
#include "attrsel/trace.h"
#include "httplib.h"
#include "string_compat.h"

namespace attrsel {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

constexpr char kJson[] = "application/json";

struct HostedDataset {
  HostedDataset(std::string id, Dataset dataset)
      : id(std::move(id)),
        dataset(std::move(dataset)),
        engine(std::make_unique<MeasureEngine>(this->dataset)) {}

  std::string id;
  Dataset dataset;
  std::unique_ptr<MeasureEngine> engine;  // Refers to |dataset|.
};

enum class RunState { kRunning, kFinished, kFailed };

std::string_view StateName(RunState state) {
  switch (state) {
    case RunState::kRunning:
      return "running";
    case RunState::kFinished:
      return "finished";
    case RunState::kFailed:
      return "failed";
  }
  return "failed";
}

struct Run {
  std::string id;
  std::string dataset_id;  // Empty for a detached replay.
  ExplorationConfig config;
  bool replay = false;
  double pace = 0.0;  // Replay events per second; 0 serves all at once.
  Clock::time_point created = Clock::now();

  mutable std::mutex mutex;
  RunState state = RunState::kRunning;
  std::vector<std::string> lines;
  std::string error;

  // Events a poller may see now, and the state that goes with them.
  std::pair<size_t, RunState> Visible() const {
    if (!replay || pace <= 0.0 || state != RunState::kFinished) {
      return {lines.size(), state};
    }
    const double elapsed =
        std::chrono::duration<double>(Clock::now() - created).count();
    const double released = 1.0 + std::floor(elapsed * pace);
    if (released >= static_cast<double>(lines.size())) {
      return {lines.size(), state};
    }
    return {static_cast<size_t>(released), RunState::kRunning};
  }
};

// Mirrors each event into the run's in-memory buffer and its trace file.
class RunSink : public TraceSink {
 public:
  RunSink(std::shared_ptr<Run> run, JsonlTraceWriter& writer)
      : run_(std::move(run)), writer_(writer) {}

  void Emit(const TraceEvent& event) override {
    writer_.Emit(event);
    std::string line = TraceEventToLine(event);
    std::lock_guard<std::mutex> lock(run_->mutex);
    run_->lines.push_back(std::move(line));
  }

 private:
  std::shared_ptr<Run> run_;
  JsonlTraceWriter& writer_;
};

void Reply(httplib::Response& res, int code, const OrderedJson& body) {
  res.status = code;
  res.set_content(body.dump(), kJson);
}

void ReplyError(httplib::Response& res, int code, std::string_view message) {
  OrderedJson body;
  body["error"] = std::string(message);
  Reply(res, code, body);
}

int HttpCode(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kNotFound:
      return 404;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kUnimplemented:
    case absl::StatusCode::kOutOfRange:
      return 422;
    case absl::StatusCode::kFailedPrecondition:
      return 409;
    default:
      return 500;
  }
}

void ReplyStatus(httplib::Response& res, const absl::Status& status) {
  ReplyError(res, HttpCode(status), internal::Std(status.message()));
}

absl::StatusOr<OrderedJson> ParseBody(const httplib::Request& req) {
  if (req.body.empty()) return OrderedJson::object();
  OrderedJson body = OrderedJson::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    return absl::InvalidArgumentError(
        "MalformedRequest: body is not a JSON object");
  }
  return body;
}

// The config may be nested under "config" or given inline.
absl::StatusOr<ExplorationConfig> RequestConfig(const OrderedJson& body) {
  if (body.contains("config")) return ConfigFromRequest(body["config"]);
  OrderedJson inline_config = body;
  inline_config.erase("dataset");
  inline_config.erase("attributes");
  return ConfigFromRequest(inline_config);
}

absl::StatusOr<std::string> DatasetField(const OrderedJson& body) {
  if (!body.contains("dataset") || !body["dataset"].is_string()) {
    return absl::InvalidArgumentError(
        "MalformedRequest: missing string field 'dataset'");
  }
  return body["dataset"].get<std::string>();
}

bool Truthy(std::string_view value) {
  return value == "1" || value == "true" || value == "yes";
}

// Trace lines with end.duration_ms zeroed, for comparing two runs.
std::vector<TraceEvent> WithoutDuration(std::vector<TraceEvent> events) {
  for (TraceEvent& event : events) {
    if (auto* end = std::get_if<EndEvent>(&event.payload)) end->duration_ms = 0;
  }
  return events;
}

}  // namespace

class Service::Impl {
 public:
  explicit Impl(ServiceOptions options) : options_(std::move(options)) {}

  ~Impl() { Stop(); }

  void Routes();
  void RebuildRegistry();

  absl::Status Bind(const std::string& host, int port) {
    if (port == 0) {
      const int bound = server_.bind_to_any_port(host);
      if (bound < 0) {
        return absl::UnavailableError(
            absl::StrCat("PortInUse: cannot bind ", host));
      }
      port_ = bound;
    } else {
      if (!server_.bind_to_port(host, port)) {
        return absl::UnavailableError(
            absl::StrCat("PortInUse: cannot bind ", host, ":", port));
      }
      port_ = port;
    }
    return absl::OkStatus();
  }

  int port() const { return port_; }

  absl::Status Serve() {
    if (port_ < 0) return absl::FailedPreconditionError("not bound");
    if (!server_.listen_after_bind() && !stopping_) {
      return absl::InternalError("server stopped unexpectedly");
    }
    return absl::OkStatus();
  }

  void Stop() {
    {
      std::lock_guard<std::mutex> lock(runs_mutex_);
      stopping_ = true;
    }
    server_.stop();
    std::vector<std::thread> workers;
    {
      std::lock_guard<std::mutex> lock(runs_mutex_);
      workers.swap(workers_);
    }
    for (std::thread& worker : workers) worker.join();
  }

 private:
  std::vector<std::string> DatasetIds() const;
  absl::StatusOr<std::shared_ptr<const HostedDataset>> GetDataset(
      const std::string& id);
  std::shared_ptr<Run> FindRun(const std::string& id) const;
  std::string NextRunId();
  std::string TracePath(const std::string& run_id) const {
    return (fs::path(options_.traces_dir) / (run_id + ".jsonl")).string();
  }
  OrderedJson HandleJson(const Run& run) const;

  void ListDatasets(const httplib::Request& req, httplib::Response& res);
  void DatasetStatsHandler(const httplib::Request& req,
                           httplib::Response& res);
  void StartRun(const httplib::Request& req, httplib::Response& res);
  void ListRuns(const httplib::Request& req, httplib::Response& res);
  void GetRun(const httplib::Request& req, httplib::Response& res);
  void GetEvents(const httplib::Request& req, httplib::Response& res);
  void Evaluate(const httplib::Request& req, httplib::Response& res);
  void Compare(const httplib::Request& req, httplib::Response& res);
  void StartReplay(const httplib::Request& req, httplib::Response& res);

  const ServiceOptions options_;
  httplib::Server server_;
  int port_ = -1;

  std::mutex datasets_mutex_;
  std::map<std::string, std::shared_ptr<const HostedDataset>> datasets_;

  mutable std::mutex runs_mutex_;
  std::map<std::string, std::shared_ptr<Run>> runs_;
  int next_run_number_ = 1;
  bool stopping_ = false;
  std::vector<std::thread> workers_;
};

void Service::Impl::Routes() {
  // httplib's default adds SO_REUSEPORT, which lets a second server share a
  // busy port instead of failing.
  server_.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  server_.Get("/api/health", [](const httplib::Request&, httplib::Response& res) {
    Reply(res, 200, OrderedJson{{"status", "ok"}});
  });
  auto bind = [this](auto method) {
    return [this, method](const httplib::Request& req, httplib::Response& res) {
      (this->*method)(req, res);
    };
  };
  server_.Get("/api/datasets", bind(&Impl::ListDatasets));
  server_.Get(R"(/api/datasets/([^/]+)/stats)",
              bind(&Impl::DatasetStatsHandler));
  server_.Post("/api/runs", bind(&Impl::StartRun));
  server_.Get("/api/runs", bind(&Impl::ListRuns));
  server_.Get(R"(/api/runs/([^/]+))", bind(&Impl::GetRun));
  server_.Get(R"(/api/runs/([^/]+)/events)", bind(&Impl::GetEvents));
  server_.Post("/api/evaluate", bind(&Impl::Evaluate));
  server_.Post("/api/compare", bind(&Impl::Compare));
  server_.Post("/api/replays", bind(&Impl::StartReplay));
  server_.set_exception_handler([](const httplib::Request&,
                                   httplib::Response& res,
                                   std::exception_ptr ep) {
    std::string what = "unknown error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    ReplyError(res, 500, absl::StrCat("Internal: ", what));
  });
}

std::vector<std::string> Service::Impl::DatasetIds() const {
  std::vector<std::string> ids;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(options_.datasets_dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      ids.push_back(entry.path().stem().string());
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

absl::StatusOr<std::shared_ptr<const HostedDataset>>
Service::Impl::GetDataset(const std::string& id) {
  std::lock_guard<std::mutex> lock(datasets_mutex_);
  if (auto it = datasets_.find(id); it != datasets_.end()) return it->second;
  const std::vector<std::string> ids = DatasetIds();
  if (!std::binary_search(ids.begin(), ids.end(), id)) {
    return absl::NotFoundError(absl::StrCat("UnknownDataset: '", id, "'"));
  }
  const fs::path dir(options_.datasets_dir);
  const fs::path meta = dir / (id + ".meta");
  auto dataset = LoadCsv((dir / (id + ".csv")).string(),
                         fs::exists(meta) ? meta.string() : "");
  if (!dataset.ok()) return dataset.status();
  auto hosted = std::make_shared<const HostedDataset>(id, *std::move(dataset));
  datasets_[id] = hosted;
  return hosted;
}

std::shared_ptr<Run> Service::Impl::FindRun(const std::string& id) const {
  std::lock_guard<std::mutex> lock(runs_mutex_);
  auto it = runs_.find(id);
  return it == runs_.end() ? nullptr : it->second;
}

std::string Service::Impl::NextRunId() {
  return absl::StrFormat("run-%06d", next_run_number_++);
}

OrderedJson Service::Impl::HandleJson(const Run& run) const {
  std::lock_guard<std::mutex> lock(run.mutex);
  const auto [count, state] = run.Visible();
  OrderedJson out;
  out["run_id"] = run.id;
  out["state"] = std::string(StateName(state));
  out["kind"] = run.replay ? "replay" : "run";
  out["dataset"] =
      run.dataset_id.empty() ? OrderedJson(nullptr) : OrderedJson(run.dataset_id);
  out["config"] = ConfigToJson(run.config);
  out["event_count"] = count;
  if (!run.error.empty()) out["error"] = run.error;
  return out;
}

void Service::Impl::RebuildRegistry() {
  std::error_code ec;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(options_.traces_dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::map<std::string, std::string> digest_to_dataset;
  for (const std::string& id : DatasetIds()) {
    if (auto hosted = GetDataset(id); hosted.ok()) {
      digest_to_dataset.emplace((*hosted)->engine->digest(), id);
    }
  }
  for (const fs::path& file : files) {
    const std::string id = file.stem().string();
    auto events = ReadTrace(file.string(), {.allow_incomplete = true});
    if (!events.ok() || events->empty()) {
      std::fprintf(stderr, "skipping trace %s: %s\n", file.c_str(),
                   events.ok() ? "empty" : events.status().ToString().c_str());
      continue;
    }
    auto run = std::make_shared<Run>();
    run->id = id;
    const auto& start = std::get<StartEvent>(events->front().payload);
    run->config = start.config;
    if (auto it = digest_to_dataset.find(start.dataset_digest);
        it != digest_to_dataset.end()) {
      run->dataset_id = it->second;
    }
    for (const TraceEvent& event : *events) {
      run->lines.push_back(TraceEventToLine(event));
    }
    if (std::holds_alternative<EndEvent>(events->back().payload)) {
      run->state = RunState::kFinished;
    } else {
      run->state = RunState::kFailed;
      run->error = "trace has no end event";
    }
    int number = 0;
    if (id.rfind("run-", 0) == 0 &&
        absl::SimpleAtoi(internal::Absl(std::string_view(id).substr(4)),
                         &number)) {
      next_run_number_ = std::max(next_run_number_, number + 1);
    }
    runs_[id] = std::move(run);
  }
}

void Service::Impl::ListDatasets(const httplib::Request&,
                                 httplib::Response& res) {
  OrderedJson out = OrderedJson::array();
  for (const std::string& id : DatasetIds()) {
    out.push_back(OrderedJson{{"id", id}, {"file", id + ".csv"}});
  }
  Reply(res, 200, out);
}

void Service::Impl::DatasetStatsHandler(const httplib::Request& req,
                                        httplib::Response& res) {
  auto hosted = GetDataset(req.matches[1]);
  if (!hosted.ok()) return ReplyStatus(res, hosted.status());
  OrderedJson out;
  out["id"] = (*hosted)->id;
  out["digest"] = (*hosted)->engine->digest();
  std::vector<std::string> names;
  for (const Attribute& a : (*hosted)->dataset.attributes()) {
    names.push_back(a.name);
  }
  out["attributes"] = names;
  out["stats"] = StatsToJson(ComputeStats((*hosted)->dataset));
  Reply(res, 200, out);
}

void Service::Impl::StartRun(const httplib::Request& req,
                             httplib::Response& res) {
  auto body = ParseBody(req);
  if (!body.ok()) return ReplyStatus(res, body.status());
  auto dataset_id = DatasetField(*body);
  if (!dataset_id.ok()) return ReplyStatus(res, dataset_id.status());
  auto hosted = GetDataset(*dataset_id);
  if (!hosted.ok()) return ReplyStatus(res, hosted.status());
  auto config = RequestConfig(*body);
  if (!config.ok()) return ReplyError(res, 422, internal::Std(config.status().message()));

  auto run = std::make_shared<Run>();
  run->dataset_id = *dataset_id;
  run->config = *config;
  std::lock_guard<std::mutex> lock(runs_mutex_);
  if (stopping_) return ReplyError(res, 503, "ShuttingDown");
  run->id = NextRunId();
  auto writer = JsonlTraceWriter::Open(TracePath(run->id));
  if (!writer.ok()) return ReplyError(res, 500, internal::Std(writer.status().message()));
  runs_[run->id] = run;
  workers_.emplace_back([run, hosted = *hosted,
                         writer = std::shared_ptr<JsonlTraceWriter>(
                             *std::move(writer))] {
    RunSink sink(run, *writer);
    auto result = RunSelection(*hosted->engine, run->config, sink,
                               {.record_duration = true});
    std::lock_guard<std::mutex> lock(run->mutex);
    if (!result.ok()) {
      run->state = RunState::kFailed;
      run->error = std::string(result.status().message());
    } else if (!writer->status().ok()) {
      run->state = RunState::kFailed;
      run->error = std::string(writer->status().message());
    } else {
      run->state = RunState::kFinished;
    }
  });
  Reply(res, 201, HandleJson(*run));
}

void Service::Impl::ListRuns(const httplib::Request&, httplib::Response& res) {
  std::vector<std::shared_ptr<Run>> runs;
  {
    std::lock_guard<std::mutex> lock(runs_mutex_);
    for (const auto& [id, run] : runs_) runs.push_back(run);
  }
  OrderedJson out = OrderedJson::array();
  for (const auto& run : runs) out.push_back(HandleJson(*run));
  Reply(res, 200, out);
}

void Service::Impl::GetRun(const httplib::Request& req,
                           httplib::Response& res) {
  auto run = FindRun(req.matches[1]);
  if (!run) return ReplyError(res, 404, absl::StrCat("UnknownRun: '", std::string(req.matches[1]), "'"));
  Reply(res, 200, HandleJson(*run));
}

void Service::Impl::GetEvents(const httplib::Request& req,
                              httplib::Response& res) {
  auto run = FindRun(req.matches[1]);
  if (!run) return ReplyError(res, 404, absl::StrCat("UnknownRun: '", std::string(req.matches[1]), "'"));
  size_t cursor = 0;
  if (req.has_param("cursor") &&
      !absl::SimpleAtoi(req.get_param_value("cursor"), &cursor)) {
    return ReplyError(res, 400, "MalformedRequest: cursor must be an integer");
  }
  // The event payloads are the trace lines verbatim.
  std::string body;
  {
    std::lock_guard<std::mutex> lock(run->mutex);
    const auto [count, state] = run->Visible();
    const size_t first = std::min(cursor, count);
    body = absl::StrCat(R"({"run_id":)", OrderedJson(run->id).dump(),
                        R"(,"state":")", internal::Absl(StateName(state)),
                        R"(","events":[)");
    for (size_t i = first; i < count; ++i) {
      if (i > first) body += ',';
      body += run->lines[i];
    }
    absl::StrAppend(&body, R"(],"next_cursor":)", std::max(cursor, count),
                    "}");
  }
  res.status = 200;
  res.set_content(body, kJson);
}

void Service::Impl::Evaluate(const httplib::Request& req,
                             httplib::Response& res) {
  auto body = ParseBody(req);
  if (!body.ok()) return ReplyStatus(res, body.status());
  auto dataset_id = DatasetField(*body);
  if (!dataset_id.ok()) return ReplyStatus(res, dataset_id.status());
  auto hosted = GetDataset(*dataset_id);
  if (!hosted.ok()) return ReplyStatus(res, hosted.status());
  auto config = RequestConfig(*body);
  if (!config.ok()) return ReplyError(res, 422, internal::Std(config.status().message()));
  std::vector<std::string> names;
  if (body->contains("attributes")) {
    const OrderedJson& list = (*body)["attributes"];
    if (!list.is_array()) {
      return ReplyError(res, 422, "MalformedRequest: attributes must be a list");
    }
    for (const OrderedJson& name : list) {
      if (!name.is_string()) {
        return ReplyError(res, 422,
                          "MalformedRequest: attribute names must be strings");
      }
      names.push_back(name.get<std::string>());
    }
  }
  auto set = ResolveAttributes((*hosted)->dataset, names);
  if (!set.ok()) return ReplyError(res, 422, internal::Std(set.status().message()));
  Reply(res, 200,
        PropertiesToJson((*hosted)->engine->Properties(*set, *config),
                         (*hosted)->dataset));
}

void Service::Impl::Compare(const httplib::Request& req,
                            httplib::Response& res) {
  auto body = ParseBody(req);
  if (!body.ok()) return ReplyStatus(res, body.status());
  auto dataset_id = DatasetField(*body);
  if (!dataset_id.ok()) return ReplyStatus(res, dataset_id.status());
  auto hosted = GetDataset(*dataset_id);
  if (!hosted.ok()) return ReplyStatus(res, hosted.status());
  auto config = RequestConfig(*body);
  if (!config.ok()) return ReplyError(res, 422, internal::Std(config.status().message()));
  Reply(res, 200,
        ComparisonToJson(CompareMethods(*(*hosted)->engine, *config),
                         (*hosted)->dataset));
}

void Service::Impl::StartReplay(const httplib::Request& req,
                                httplib::Response& res) {
  std::string text;
  std::string detached;
  std::string pace_text;
  if (req.is_multipart_form_data()) {
    if (!req.has_file("trace")) {
      return ReplyError(res, 422, "MalformedRequest: missing 'trace' part");
    }
    text = req.get_file_value("trace").content;
    if (req.has_file("detached")) detached = req.get_file_value("detached").content;
    if (req.has_file("pace")) pace_text = req.get_file_value("pace").content;
  } else {
    text = req.body;
  }
  if (req.has_param("detached")) detached = req.get_param_value("detached");
  if (req.has_param("pace")) pace_text = req.get_param_value("pace");
  double pace = 0.0;
  if (!pace_text.empty() &&
      (!absl::SimpleAtod(pace_text, &pace) || !(pace >= 0.0))) {
    return ReplyError(res, 422, "MalformedRequest: pace must be >= 0");
  }

  auto events = ParseTrace(text);
  if (!events.ok()) {
    return ReplyError(res, 422, internal::Std(events.status().message()));
  }
  const auto& start = std::get<StartEvent>(events->front().payload);
  std::shared_ptr<const HostedDataset> match;
  for (const std::string& id : DatasetIds()) {
    auto hosted = GetDataset(id);
    if (hosted.ok() && (*hosted)->engine->digest() == start.dataset_digest) {
      match = *hosted;
      break;
    }
  }
  if (!match && !Truthy(detached)) {
    return ReplyError(
        res, 409,
        absl::StrCat("DigestMismatch: no hosted dataset has digest ",
                     start.dataset_digest));
  }
  if (match && !Truthy(detached)) {
    // Attached replays are checked by re-running the recorded configuration.
    CollectingTraceSink sink;
    auto rerun = RunSelection(*match->engine, start.config, sink);
    if (!rerun.ok() ||
        WithoutDuration(sink.events()) != WithoutDuration(*events)) {
      return ReplyError(
          res, 409,
          absl::StrCat("ReplayDiverged: re-running the trace's configuration "
                       "on dataset '", match->id,
                       "' does not reproduce its events"));
    }
  }

  auto run = std::make_shared<Run>();
  run->replay = true;
  run->pace = pace;
  run->config = start.config;
  if (match) run->dataset_id = match->id;
  for (const TraceEvent& event : *events) {
    run->lines.push_back(TraceEventToLine(event));
  }
  run->state = RunState::kFinished;
  std::lock_guard<std::mutex> lock(runs_mutex_);
  run->id = NextRunId();
  if (auto status = WriteTrace(*events, TracePath(run->id)); !status.ok()) {
    return ReplyError(res, 500, internal::Std(status.message()));
  }
  run->created = Clock::now();
  runs_[run->id] = run;
  Reply(res, 201, HandleJson(*run));
}

Service::Service(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}

Service::~Service() = default;

absl::StatusOr<std::unique_ptr<Service>> Service::Create(
    const ServiceOptions& options) {
  for (const std::string& dir : {options.datasets_dir, options.traces_dir}) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
      return absl::NotFoundError(
          absl::StrCat("BadDirectory: '", dir, "' is not a directory"));
    }
  }
  auto impl = std::make_unique<Impl>(options);
  impl->RebuildRegistry();
  impl->Routes();
  return std::unique_ptr<Service>(new Service(std::move(impl)));
}

absl::Status Service::Bind(const std::string& host, int port) {
  return impl_->Bind(host, port);
}

int Service::port() const { return impl_->port(); }

absl::Status Service::Serve() { return impl_->Serve(); }

void Service::Stop() { impl_->Stop(); }

}  // namespace attrsel
