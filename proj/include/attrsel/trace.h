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

// Execution traces of selection runs.
//
// A trace is a JSON Lines file, one event object per line. Keys appear in this
// fixed order (after "type" and "step"):
//
//   start     version, config{method, threshold, beam_width, budget,
//             weights{size, instability, time, epsilon}, pruning},
//             attributes, dataset_digest
//   evaluate  set, cost, sensitivity, efficiency (number or "inf"), satisfying
//   prune     set, reason ("superset_of_satisfying" | "cost_bound" |
//             "duplicate")
//   beam      sets
//   best      set, cost
//   end       result (index list or null), explored_count, pruned_count,
//             steps, full_set_sensitivity (number or null), duration_ms
//
// Sets are ascending attribute index lists. A valid trace starts with exactly
// one start event, ends with exactly one end event, has non-decreasing steps,
// and only references sets in beam/best/end that an earlier evaluate event
// measured.

#ifndef ATTRSEL_TRACE_H_
#define ATTRSEL_TRACE_H_

#include <cstdint>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "attrsel/attribute_set.h"
#include "attrsel/config.h"
#include "attrsel/dataset.h"
#include "attrsel/measures.h"
#include "attrsel/selection.h"

namespace attrsel {

inline constexpr std::string_view kTraceVersion = "1";

enum class PruneReason { kSupersetOfSatisfying, kCostBound, kDuplicate };

std::string_view PruneReasonName(PruneReason reason);

struct StartEvent {
  std::string version = std::string(kTraceVersion);
  ExplorationConfig config;
  std::vector<std::string> attributes;
  std::string dataset_digest;

  bool operator==(const StartEvent&) const = default;
};

struct EvaluateEvent {
  NodeEvaluation node;

  bool operator==(const EvaluateEvent&) const = default;
};

struct PruneEvent {
  AttributeSet set;
  PruneReason reason = PruneReason::kDuplicate;

  bool operator==(const PruneEvent&) const = default;
};

struct BeamEvent {
  std::vector<AttributeSet> sets;

  bool operator==(const BeamEvent&) const = default;
};

struct BestEvent {
  AttributeSet set;
  double cost = 0.0;

  bool operator==(const BestEvent&) const = default;
};

struct EndEvent {
  std::optional<AttributeSet> result;
  int explored_count = 0;
  int pruned_count = 0;
  int steps = 0;
  std::optional<double> full_set_sensitivity;
  int64_t duration_ms = 0;

  bool operator==(const EndEvent&) const = default;
};

struct TraceEvent {
  int step = 0;
  std::variant<StartEvent, EvaluateEvent, PruneEvent, BeamEvent, BestEvent,
               EndEvent>
      payload;

  std::string_view type() const;
  bool operator==(const TraceEvent&) const = default;
};

// Receives events as a run produces them.
class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void Emit(const TraceEvent& event) = 0;
};

class NullTraceSink : public TraceSink {
 public:
  void Emit(const TraceEvent&) override {}
};

class CollectingTraceSink : public TraceSink {
 public:
  void Emit(const TraceEvent& event) override { events_.push_back(event); }
  const std::vector<TraceEvent>& events() const { return events_; }

 private:
  std::vector<TraceEvent> events_;
};

// Serializes one event as a single JSON line without the trailing newline.
std::string TraceEventToLine(const TraceEvent& event);

// Parses one line. Errors carry no line number; ParseTrace adds it.
absl::StatusOr<TraceEvent> TraceEventFromLine(std::string_view line);

// All events, one line each, "\n"-terminated. Fails with IncompleteTrace if
// the sequence does not start with start and end with end.
absl::StatusOr<std::string> SerializeTrace(
    const std::vector<TraceEvent>& events);

absl::Status WriteTrace(const std::vector<TraceEvent>& events,
                        const std::string& path);

struct TraceReadOptions {
  // Accept a trace whose end event has not been written yet (live files).
  bool allow_incomplete = false;
};

// Parses and validates. Errors name the first offending line:
// "MalformedLine: line N ...", "InvariantViolation: line N ...", or
// "UnsupportedVersion: ...".
absl::StatusOr<std::vector<TraceEvent>> ParseTrace(
    std::string_view text, const TraceReadOptions& options = {});
absl::StatusOr<std::vector<TraceEvent>> ReadTrace(
    const std::string& path, const TraceReadOptions& options = {});

// Rebuilds the run's result from a complete, valid trace.
absl::StatusOr<SelectionResult> Summarize(
    const std::vector<TraceEvent>& events);

// FailedPrecondition ("DigestMismatch") unless the trace was recorded
// against |dataset|.
absl::Status CheckTraceDataset(const std::vector<TraceEvent>& events,
                               const Dataset& dataset);

// Appends each event to a file as it arrives, flushing per line, so readers
// can tail a live run.
class JsonlTraceWriter : public TraceSink {
 public:
  static absl::StatusOr<std::unique_ptr<JsonlTraceWriter>> Open(
      const std::string& path);

  void Emit(const TraceEvent& event) override;
  // First write error, if any.
  absl::Status status() const;

 private:
  explicit JsonlTraceWriter(std::ofstream out) : out_(std::move(out)) {}

  mutable std::mutex mutex_;
  std::ofstream out_;
  absl::Status status_;
};

}  // namespace attrsel

#endif  // ATTRSEL_TRACE_H_
