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

#ifndef ATTRSEL_SRC_RUN_RECORDER_H_
#define ATTRSEL_SRC_RUN_RECORDER_H_

#include <chrono>
#include <vector>

#include "attrsel/explorer.h"
#include "attrsel/measures.h"
#include "attrsel/selection.h"
#include "attrsel/trace.h"

namespace attrsel {
namespace internal {

// Bookkeeping shared by one run: counts, frontier, best, and trace emission.
class RunRecorder {
 public:
  RunRecorder(const MeasureEngine& engine, const ExplorationConfig& config,
              TraceSink& sink, const RunOptions& options)
      : engine_(engine),
        config_(config),
        sink_(sink),
        options_(options),
        started_(std::chrono::steady_clock::now()),
        cost_full_(engine.UsabilityCost(
            AttributeSet::Full(engine.num_attributes()), config.weights)) {
    result_.method = config.method;
    sink_.Emit(TraceEvent{0, MakeStartEvent(engine, config)});
  }

  void set_step(int step) { step_ = step; }
  int step() const { return step_; }
  ExplorerState& state() { return state_; }
  const SelectionResult& result() const { return result_; }

  NodeEvaluation Evaluate(const AttributeSet& set) {
    NodeEvaluation node = engine_.Evaluate(set, config_, cost_full_);
    ++result_.explored_count;
    state_.seen.insert(set);
    sink_.Emit(TraceEvent{step_, EvaluateEvent{node}});
    if (node.satisfying) {
      result_.frontier.push_back(node);
      state_.satisfying.push_back(set);
      if (!result_.best || IsBetterBest(node, *result_.best)) {
        result_.best = node;
        state_.best_cost = node.cost;
        sink_.Emit(TraceEvent{step_, BestEvent{set, node.cost}});
      }
    }
    return node;
  }

  void Prune(const AttributeSet& set, PruneReason reason) {
    ++result_.pruned_count;
    state_.seen.insert(set);
    sink_.Emit(TraceEvent{step_, PruneEvent{set, reason}});
  }

  void Beam(const std::vector<NodeEvaluation>& beam) {
    BeamEvent event;
    for (const NodeEvaluation& node : beam) event.sets.push_back(node.set);
    sink_.Emit(TraceEvent{step_, std::move(event)});
  }

  SelectionResult Finish(int steps) {
    result_.steps = steps;
    const AttributeSet full = AttributeSet::Full(engine_.num_attributes());
    if (!result_.best) {
      // Confirm unreachability on the full candidate set itself.
      const NodeEvaluation node = state_.seen.contains(full)
                                      ? engine_.Evaluate(full, config_,
                                                         cost_full_)
                                      : Evaluate(full);
      if (!node.satisfying) result_.full_set_sensitivity = node.sensitivity;
    }
    EndEvent end;
    if (result_.best) end.result = result_.best->set;
    end.explored_count = result_.explored_count;
    end.pruned_count = result_.pruned_count;
    end.steps = result_.steps;
    end.full_set_sensitivity = result_.full_set_sensitivity;
    if (options_.record_duration) {
      end.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - started_)
                            .count();
    }
    sink_.Emit(TraceEvent{step_, std::move(end)});
    return result_;
  }

 private:
  const MeasureEngine& engine_;
  const ExplorationConfig& config_;
  TraceSink& sink_;
  RunOptions options_;
  std::chrono::steady_clock::time_point started_;
  double cost_full_;
  int step_ = 0;
  ExplorerState state_;
  SelectionResult result_;
};

}  // namespace internal
}  // namespace attrsel

#endif  // ATTRSEL_SRC_RUN_RECORDER_H_
