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

#include "attrsel/trace.h"

#include <cmath>
#include <stdexcept>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "attrsel/report.h"
#include "attrsel/text_formats.h"
#include "json.hpp"
#include "string_compat.h"

namespace attrsel {

using Json = nlohmann::ordered_json;

std::string_view PruneReasonName(PruneReason reason) {
  switch (reason) {
    case PruneReason::kSupersetOfSatisfying:
      return "superset_of_satisfying";
    case PruneReason::kCostBound:
      return "cost_bound";
    case PruneReason::kDuplicate:
      return "duplicate";
  }
  return "unknown";
}

namespace {

struct Type {
  std::string_view operator()(const StartEvent&) const { return "start"; }
  std::string_view operator()(const EvaluateEvent&) const { return "evaluate"; }
  std::string_view operator()(const PruneEvent&) const { return "prune"; }
  std::string_view operator()(const BeamEvent&) const { return "beam"; }
  std::string_view operator()(const BestEvent&) const { return "best"; }
  std::string_view operator()(const EndEvent&) const { return "end"; }
};

// Field-level decoding errors; converted to a Status at the line boundary.
struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json SetToJson(const AttributeSet& set) { return Json(set.Members()); }

const Json& Field(const Json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw DecodeError(absl::StrCat("missing field '", key, "'"));
  }
  return *it;
}

double NumberField(const Json& object, const char* key) {
  const Json& value = Field(object, key);
  if (!value.is_number()) {
    throw DecodeError(absl::StrCat("field '", key, "' is not a number"));
  }
  return value.get<double>();
}

int64_t IntField(const Json& object, const char* key) {
  const Json& value = Field(object, key);
  if (!value.is_number_integer()) {
    throw DecodeError(absl::StrCat("field '", key, "' is not an integer"));
  }
  return value.get<int64_t>();
}

bool BoolField(const Json& object, const char* key) {
  const Json& value = Field(object, key);
  if (!value.is_boolean()) {
    throw DecodeError(absl::StrCat("field '", key, "' is not a boolean"));
  }
  return value.get<bool>();
}

std::string StringField(const Json& object, const char* key) {
  const Json& value = Field(object, key);
  if (!value.is_string()) {
    throw DecodeError(absl::StrCat("field '", key, "' is not a string"));
  }
  return value.get<std::string>();
}

AttributeSet SetFromJson(const Json& value) {
  if (!value.is_array()) throw DecodeError("set is not an array");
  std::vector<int> members;
  for (const Json& item : value) {
    if (!item.is_number_integer() || item.get<int64_t>() < 0 ||
        item.get<int64_t>() > 1 << 20) {
      throw DecodeError("set members must be attribute indices");
    }
    const int index = item.get<int>();
    if (!members.empty() && index <= members.back()) {
      throw DecodeError("set members must be strictly ascending");
    }
    members.push_back(index);
  }
  return AttributeSet(members);
}

ExplorationConfig ConfigFromJson(const Json& value) {
  if (!value.is_object()) throw DecodeError("config is not an object");
  ExplorationConfig config;
  const auto method = ParseMethod(StringField(value, "method"));
  if (!method) throw DecodeError("unknown method");
  config.method = *method;
  config.threshold_alpha = NumberField(value, "threshold");
  config.beam_width = static_cast<int>(IntField(value, "beam_width"));
  config.submission_budget = static_cast<int>(IntField(value, "budget"));
  const Json& weights = Field(value, "weights");
  if (!weights.is_object()) throw DecodeError("weights is not an object");
  config.weights.size = NumberField(weights, "size");
  config.weights.instability = NumberField(weights, "instability");
  config.weights.time = NumberField(weights, "time");
  config.weights.epsilon = NumberField(weights, "epsilon");
  config.pruning = BoolField(value, "pruning");
  return config;
}

struct Encoder {
  Json& out;

  void operator()(const StartEvent& e) const {
    out["version"] = e.version;
    out["config"] = ConfigToJson(e.config);
    out["attributes"] = e.attributes;
    out["dataset_digest"] = e.dataset_digest;
  }
  void operator()(const EvaluateEvent& e) const {
    out["set"] = SetToJson(e.node.set);
    out["cost"] = e.node.cost;
    out["sensitivity"] = e.node.sensitivity;
    if (std::isinf(e.node.efficiency)) {
      out["efficiency"] = "inf";
    } else {
      out["efficiency"] = e.node.efficiency;
    }
    out["satisfying"] = e.node.satisfying;
  }
  void operator()(const PruneEvent& e) const {
    out["set"] = SetToJson(e.set);
    out["reason"] = PruneReasonName(e.reason);
  }
  void operator()(const BeamEvent& e) const {
    Json sets = Json::array();
    for (const AttributeSet& set : e.sets) sets.push_back(SetToJson(set));
    out["sets"] = std::move(sets);
  }
  void operator()(const BestEvent& e) const {
    out["set"] = SetToJson(e.set);
    out["cost"] = e.cost;
  }
  void operator()(const EndEvent& e) const {
    out["result"] = e.result ? SetToJson(*e.result) : Json(nullptr);
    out["explored_count"] = e.explored_count;
    out["pruned_count"] = e.pruned_count;
    out["steps"] = e.steps;
    out["full_set_sensitivity"] =
        e.full_set_sensitivity ? Json(*e.full_set_sensitivity) : Json(nullptr);
    out["duration_ms"] = e.duration_ms;
  }
};

TraceEvent DecodeEvent(const Json& json) {
  if (!json.is_object()) throw DecodeError("event is not an object");
  TraceEvent event;
  const std::string type = StringField(json, "type");
  const int64_t step = IntField(json, "step");
  if (step < 0) throw DecodeError("step must be >= 0");
  event.step = static_cast<int>(step);
  if (type == "start") {
    StartEvent e;
    e.version = StringField(json, "version");
    if (e.version != kTraceVersion) {
      // Surfaced as UnsupportedVersion by the caller.
      throw std::invalid_argument(e.version);
    }
    e.config = ConfigFromJson(Field(json, "config"));
    const Json& attributes = Field(json, "attributes");
    if (!attributes.is_array()) throw DecodeError("attributes is not a list");
    for (const Json& name : attributes) {
      if (!name.is_string()) throw DecodeError("attribute name not a string");
      e.attributes.push_back(name.get<std::string>());
    }
    e.dataset_digest = StringField(json, "dataset_digest");
    event.payload = std::move(e);
  } else if (type == "evaluate") {
    EvaluateEvent e;
    e.node.set = SetFromJson(Field(json, "set"));
    e.node.cost = NumberField(json, "cost");
    e.node.sensitivity = NumberField(json, "sensitivity");
    const Json& efficiency = Field(json, "efficiency");
    if (efficiency.is_string() && efficiency.get<std::string>() == "inf") {
      e.node.efficiency = kInfiniteEfficiency;
    } else if (efficiency.is_number()) {
      e.node.efficiency = efficiency.get<double>();
    } else {
      throw DecodeError("efficiency must be a number or \"inf\"");
    }
    e.node.satisfying = BoolField(json, "satisfying");
    event.payload = std::move(e);
  } else if (type == "prune") {
    PruneEvent e;
    e.set = SetFromJson(Field(json, "set"));
    const std::string reason = StringField(json, "reason");
    if (reason == "superset_of_satisfying") {
      e.reason = PruneReason::kSupersetOfSatisfying;
    } else if (reason == "cost_bound") {
      e.reason = PruneReason::kCostBound;
    } else if (reason == "duplicate") {
      e.reason = PruneReason::kDuplicate;
    } else {
      throw DecodeError(absl::StrCat("unknown prune reason '", reason, "'"));
    }
    event.payload = std::move(e);
  } else if (type == "beam") {
    BeamEvent e;
    const Json& sets = Field(json, "sets");
    if (!sets.is_array()) throw DecodeError("sets is not a list");
    for (const Json& set : sets) e.sets.push_back(SetFromJson(set));
    event.payload = std::move(e);
  } else if (type == "best") {
    BestEvent e;
    e.set = SetFromJson(Field(json, "set"));
    e.cost = NumberField(json, "cost");
    event.payload = std::move(e);
  } else if (type == "end") {
    EndEvent e;
    const Json& result = Field(json, "result");
    if (!result.is_null()) e.result = SetFromJson(result);
    e.explored_count = static_cast<int>(IntField(json, "explored_count"));
    e.pruned_count = static_cast<int>(IntField(json, "pruned_count"));
    e.steps = static_cast<int>(IntField(json, "steps"));
    const Json& full = Field(json, "full_set_sensitivity");
    if (!full.is_null()) e.full_set_sensitivity = NumberField(json, "full_set_sensitivity");
    e.duration_ms = IntField(json, "duration_ms");
    event.payload = std::move(e);
  } else {
    throw DecodeError(absl::StrCat("unknown event type '", type, "'"));
  }
  return event;
}

absl::Status Violation(int line, std::string_view what) {
  return absl::InvalidArgumentError(
      absl::StrCat("InvariantViolation: line ", line, ": ",
                   internal::Absl(what)));
}

}  // namespace

std::string_view TraceEvent::type() const { return std::visit(Type{}, payload); }

std::string TraceEventToLine(const TraceEvent& event) {
  Json out;
  out["type"] = event.type();
  out["step"] = event.step;
  std::visit(Encoder{out}, event.payload);
  return out.dump();
}

absl::StatusOr<TraceEvent> TraceEventFromLine(std::string_view line) {
  Json json;
  try {
    json = Json::parse(line);
  } catch (const Json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("invalid JSON: ", e.what()));
  }
  try {
    return DecodeEvent(json);
  } catch (const std::invalid_argument& e) {
    return absl::UnimplementedError(absl::StrCat(
        "UnsupportedVersion: trace version '", e.what(), "', expected '",
        internal::Absl(kTraceVersion), "'"));
  } catch (const DecodeError& e) {
    return absl::InvalidArgumentError(e.what());
  } catch (const Json::exception& e) {
    return absl::InvalidArgumentError(e.what());
  }
}

absl::StatusOr<std::string> SerializeTrace(
    const std::vector<TraceEvent>& events) {
  if (events.empty() ||
      !std::holds_alternative<StartEvent>(events.front().payload)) {
    return absl::FailedPreconditionError(
        "IncompleteTrace: the first event must be a start event");
  }
  if (!std::holds_alternative<EndEvent>(events.back().payload)) {
    return absl::FailedPreconditionError(
        "IncompleteTrace: the event stream has no end event");
  }
  std::string out;
  for (const TraceEvent& event : events) {
    out += TraceEventToLine(event);
    out.push_back('\n');
  }
  return out;
}

absl::Status WriteTrace(const std::vector<TraceEvent>& events,
                        const std::string& path) {
  auto text = SerializeTrace(events);
  if (!text.ok()) return text.status();
  return WriteStringToFile(path, *text);
}

absl::StatusOr<std::vector<TraceEvent>> ParseTrace(
    std::string_view text, const TraceReadOptions& options) {
  std::vector<TraceEvent> events;
  absl::flat_hash_set<AttributeSet> evaluated;
  double alpha = 1.0;
  bool ended = false;
  int line_no = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("MalformedLine: line ", line_no, ": empty line"));
    }
    auto event = TraceEventFromLine(line);
    if (!event.ok()) {
      if (absl::IsUnimplemented(event.status())) return event.status();
      return absl::InvalidArgumentError(absl::StrCat(
          "MalformedLine: line ", line_no, ": ", event.status().message()));
    }
    if (ended) return Violation(line_no, "event after the end event");
    const bool is_start = std::holds_alternative<StartEvent>(event->payload);
    if (events.empty() != is_start) {
      return Violation(line_no, events.empty()
                                    ? "the first event must be start"
                                    : "more than one start event");
    }
    if (!events.empty() && event->step < events.back().step) {
      return Violation(line_no, "step decreased");
    }
    auto require_evaluated = [&](const AttributeSet& set) -> absl::Status {
      if (evaluated.contains(set)) return absl::OkStatus();
      return Violation(line_no, absl::StrCat("set ", set.DebugString(),
                                             " was never evaluated"));
    };
    if (const auto* start = std::get_if<StartEvent>(&event->payload)) {
      alpha = start->config.threshold_alpha;
    } else if (const auto* e = std::get_if<EvaluateEvent>(&event->payload)) {
      const NodeEvaluation& node = e->node;
      if (!(node.sensitivity >= 0.0 && node.sensitivity <= 1.0)) {
        return Violation(line_no, "sensitivity outside [0, 1]");
      }
      if (node.satisfying != (node.sensitivity <= alpha)) {
        return Violation(line_no, "satisfying flag disagrees with threshold");
      }
      if (std::isinf(node.efficiency) != (node.sensitivity == 0.0)) {
        return Violation(line_no, "efficiency is inf iff sensitivity is 0");
      }
      evaluated.insert(node.set);
    } else if (const auto* beam = std::get_if<BeamEvent>(&event->payload)) {
      for (const AttributeSet& set : beam->sets) {
        if (auto s = require_evaluated(set); !s.ok()) return s;
      }
    } else if (const auto* best = std::get_if<BestEvent>(&event->payload)) {
      if (auto s = require_evaluated(best->set); !s.ok()) return s;
    } else if (const auto* end = std::get_if<EndEvent>(&event->payload)) {
      if (end->result) {
        if (auto s = require_evaluated(*end->result); !s.ok()) return s;
      }
      ended = true;
    }
    events.push_back(*std::move(event));
  }
  if (events.empty()) {
    return absl::InvalidArgumentError("IncompleteTrace: the trace is empty");
  }
  if (!ended && !options.allow_incomplete) {
    return absl::InvalidArgumentError(absl::StrCat(
        "IncompleteTrace: no end event after line ", line_no));
  }
  return events;
}

absl::StatusOr<std::vector<TraceEvent>> ReadTrace(
    const std::string& path, const TraceReadOptions& options) {
  auto text = ReadFileToString(path);
  if (!text.ok()) return text.status();
  return ParseTrace(*text, options);
}

absl::StatusOr<SelectionResult> Summarize(
    const std::vector<TraceEvent>& events) {
  if (events.empty() ||
      !std::holds_alternative<StartEvent>(events.front().payload) ||
      !std::holds_alternative<EndEvent>(events.back().payload)) {
    return absl::FailedPreconditionError(
        "IncompleteTrace: summarize needs a complete trace");
  }
  SelectionResult result;
  result.method = std::get<StartEvent>(events.front().payload).config.method;
  for (const TraceEvent& event : events) {
    if (const auto* e = std::get_if<EvaluateEvent>(&event.payload)) {
      if (e->node.satisfying) result.frontier.push_back(e->node);
    }
  }
  const EndEvent& end = std::get<EndEvent>(events.back().payload);
  if (end.result) {
    for (auto it = events.rbegin(); it != events.rend(); ++it) {
      const auto* e = std::get_if<EvaluateEvent>(&it->payload);
      if (e != nullptr && e->node.set == *end.result) {
        result.best = e->node;
        break;
      }
    }
    if (!result.best) {
      return absl::InvalidArgumentError(
          "InvariantViolation: end result was never evaluated");
    }
  }
  result.explored_count = end.explored_count;
  result.pruned_count = end.pruned_count;
  result.steps = end.steps;
  result.full_set_sensitivity = end.full_set_sensitivity;
  return result;
}

absl::Status CheckTraceDataset(const std::vector<TraceEvent>& events,
                               const Dataset& dataset) {
  if (events.empty() ||
      !std::holds_alternative<StartEvent>(events.front().payload)) {
    return absl::InvalidArgumentError("InvariantViolation: no start event");
  }
  const std::string& recorded =
      std::get<StartEvent>(events.front().payload).dataset_digest;
  const std::string actual = DatasetDigest(dataset);
  if (recorded != actual) {
    return absl::FailedPreconditionError(
        absl::StrCat("DigestMismatch: trace was recorded on dataset ",
                     recorded, ", this dataset is ", actual));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::unique_ptr<JsonlTraceWriter>> JsonlTraceWriter::Open(
    const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::UnavailableError(
        absl::StrCat("IoFailure: cannot open '", path, "' for writing"));
  }
  return std::unique_ptr<JsonlTraceWriter>(
      new JsonlTraceWriter(std::move(out)));
}

void JsonlTraceWriter::Emit(const TraceEvent& event) {
  const std::string line = TraceEventToLine(event) + "\n";
  std::lock_guard lock(mutex_);
  if (!status_.ok()) return;
  out_.write(line.data(), static_cast<std::streamsize>(line.size()));
  out_.flush();
  if (!out_) status_ = absl::DataLossError("IoFailure: trace write failed");
}

absl::Status JsonlTraceWriter::status() const {
  std::lock_guard lock(mutex_);
  return status_;
}

}  // namespace attrsel
