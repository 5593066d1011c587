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

#include "attrsel/baselines.h"

#include <algorithm>
#include <numeric>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "run_recorder.h"
#include "string_compat.h"

namespace attrsel {

namespace {

// Entropy differences below this are treated as ties.
constexpr double kEntropyTolerance = 1e-12;

absl::Status CheckRun(const MeasureEngine& engine,
                      const ExplorationConfig& config, Method expected) {
  if (auto status = ValidateConfig(config); !status.ok()) return status;
  if (config.method != expected) {
    return absl::InvalidArgumentError(
        absl::StrCat("config.method is ", internal::Absl(MethodName(config.method)),
                     ", expected ", internal::Absl(MethodName(expected))));
  }
  if (engine.num_attributes() == 0) {
    return absl::FailedPreconditionError(
        "EmptyAttributePool: no candidate attributes");
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<SelectionResult> EntropySelect(const MeasureEngine& engine,
                                              const ExplorationConfig& config,
                                              TraceSink& sink,
                                              const RunOptions& options) {
  if (auto status = CheckRun(engine, config, Method::kEntropy); !status.ok()) {
    return status;
  }
  const int n = engine.num_attributes();
  std::vector<double> entropy(n);
  for (int a = 0; a < n; ++a) entropy[a] = engine.EntropyBits(AttributeSet{a});
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return entropy[x] > entropy[y] + kEntropyTolerance;
  });

  internal::RunRecorder run(engine, config, sink, options);
  AttributeSet selected;
  if (run.Evaluate(selected).satisfying) return run.Finish(0);
  int steps = 0;
  for (int a : order) {
    ++steps;
    run.set_step(steps);
    selected = selected.With(a);
    if (run.Evaluate(selected).satisfying) break;
  }
  return run.Finish(steps);
}

absl::StatusOr<SelectionResult> ConditionalEntropySelect(
    const MeasureEngine& engine, const ExplorationConfig& config,
    TraceSink& sink, const RunOptions& options) {
  if (auto status = CheckRun(engine, config, Method::kConditionalEntropy);
      !status.ok()) {
    return status;
  }
  const int n = engine.num_attributes();
  internal::RunRecorder run(engine, config, sink, options);
  AttributeSet selected;
  if (run.Evaluate(selected).satisfying) return run.Finish(0);
  int steps = 0;
  while (selected.size() < n) {
    int pick = -1;
    double best_gain = -1.0;
    for (int a = 0; a < n; ++a) {
      if (selected.Contains(a)) continue;
      const double gain = engine.ConditionalEntropyGain(selected, a).value();
      if (gain > best_gain + kEntropyTolerance) {
        best_gain = gain;
        pick = a;
      }
    }
    ++steps;
    run.set_step(steps);
    selected = selected.With(pick);
    if (run.Evaluate(selected).satisfying) break;
  }
  return run.Finish(steps);
}

absl::StatusOr<SelectionResult> RunSelection(const MeasureEngine& engine,
                                             const ExplorationConfig& config,
                                             TraceSink& sink,
                                             const RunOptions& options) {
  switch (config.method) {
    case Method::kFpSelect:
      return FpSelect(engine, config, sink, options);
    case Method::kEntropy:
      return EntropySelect(engine, config, sink, options);
    case Method::kConditionalEntropy:
      return ConditionalEntropySelect(engine, config, sink, options);
  }
  return absl::InvalidArgumentError("unknown method");
}

}  // namespace attrsel
