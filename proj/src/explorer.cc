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

#include "attrsel/explorer.h"

#include <algorithm>
#include <cstdint>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "run_recorder.h"

namespace attrsel {

namespace {

bool RanksBefore(const NodeEvaluation& x, const NodeEvaluation& y) {
  if (x.efficiency != y.efficiency) return x.efficiency > y.efficiency;
  if (x.sensitivity != y.sensitivity) return x.sensitivity < y.sensitivity;
  if (x.cost != y.cost) return x.cost < y.cost;
  return x.set < y.set;
}

}  // namespace

std::vector<AttributeSet> Expand(const AttributeSet& node, int n) {
  std::vector<AttributeSet> supersets;
  for (int a = 0; a < n; ++a) {
    if (!node.Contains(a)) supersets.push_back(node.With(a));
  }
  return supersets;
}

std::optional<PruneReason> ShouldPrune(const AttributeSet& candidate,
                                       const ExplorerState& state,
                                       double cost_lower_bound) {
  if (state.seen.contains(candidate)) return PruneReason::kDuplicate;
  for (const AttributeSet& satisfying : state.satisfying) {
    if (satisfying.IsSubsetOf(candidate)) {
      return PruneReason::kSupersetOfSatisfying;
    }
  }
  if (state.best_cost && cost_lower_bound >= *state.best_cost) {
    return PruneReason::kCostBound;
  }
  return std::nullopt;
}

StartEvent MakeStartEvent(const MeasureEngine& engine,
                          const ExplorationConfig& config) {
  StartEvent start;
  start.config = config;
  for (const Attribute& attribute : engine.dataset().attributes()) {
    start.attributes.push_back(attribute.name);
  }
  start.dataset_digest = engine.digest();
  return start;
}

absl::StatusOr<SelectionResult> FpSelect(const MeasureEngine& engine,
                                         const ExplorationConfig& config,
                                         TraceSink& sink,
                                         const RunOptions& options) {
  if (auto status = ValidateConfig(config); !status.ok()) return status;
  if (config.method != Method::kFpSelect) {
    return absl::InvalidArgumentError("FpSelect: config.method is not fpselect");
  }
  const int n = engine.num_attributes();
  if (n == 0) {
    return absl::FailedPreconditionError(
        "EmptyAttributePool: no candidate attributes");
  }
  internal::RunRecorder run(engine, config, sink, options);
  const NodeEvaluation root = run.Evaluate(AttributeSet());
  if (root.satisfying) return run.Finish(0);

  std::vector<NodeEvaluation> beam = {root};
  run.Beam(beam);
  int steps = 0;
  // Beam nodes all have |steps| members; a full-size node has no successors.
  while (!beam.empty() && steps < n) {
    ++steps;
    run.set_step(steps);
    std::vector<NodeEvaluation> pool;
    for (const NodeEvaluation& node : beam) {
      for (const AttributeSet& candidate : Expand(node.set, n)) {
        if (config.pruning) {
          const auto reason = ShouldPrune(
              candidate, run.state(),
              engine.CostLowerBound(candidate, config.weights));
          if (reason) {
            run.Prune(candidate, *reason);
            continue;
          }
        }
        NodeEvaluation evaluated = run.Evaluate(candidate);
        if (!evaluated.satisfying) pool.push_back(std::move(evaluated));
      }
    }
    std::sort(pool.begin(), pool.end(), RanksBefore);
    // Without pruning a set reached from two parents is evaluated twice; the
    // beam still holds it once. Equal sets rank equal, so copies are adjacent.
    pool.erase(std::unique(pool.begin(), pool.end(),
                           [](const NodeEvaluation& x, const NodeEvaluation& y) {
                             return x.set == y.set;
                           }),
               pool.end());
    if (pool.size() > static_cast<size_t>(config.beam_width)) {
      pool.resize(config.beam_width);
    }
    beam = std::move(pool);
    run.Beam(beam);
  }
  return run.Finish(steps);
}

absl::StatusOr<SelectionResult> BruteForceFrontier(
    const MeasureEngine& engine, const ExplorationConfig& config) {
  if (auto status = ValidateConfig(config); !status.ok()) return status;
  const int n = engine.num_attributes();
  if (n > kMaxBruteForceAttributes) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "TooManyAttributes: ", n, " attributes, exhaustive search is limited "
        "to ", kMaxBruteForceAttributes));
  }
  const AttributeSet full = AttributeSet::Full(n);
  const double cost_full = engine.UsabilityCost(full, config.weights);
  const uint32_t count = uint32_t{1} << n;
  std::vector<NodeEvaluation> nodes(count);
  for (uint32_t mask = 0; mask < count; ++mask) {
    std::vector<int> members;
    for (int a = 0; a < n; ++a) {
      if (mask & (uint32_t{1} << a)) members.push_back(a);
    }
    nodes[mask] = engine.Evaluate(AttributeSet(members), config, cost_full);
  }
  SelectionResult result;
  result.method = config.method;
  result.explored_count = static_cast<int>(count);
  for (uint32_t mask = 0; mask < count; ++mask) {
    const NodeEvaluation& node = nodes[mask];
    if (!node.satisfying) continue;
    if (!result.best || IsBetterBest(node, *result.best)) result.best = node;
    // Sensitivity is antitone, so checking the immediate subsets suffices.
    bool minimal = true;
    for (int a = 0; a < n && minimal; ++a) {
      const uint32_t bit = uint32_t{1} << a;
      if ((mask & bit) && nodes[mask & ~bit].satisfying) minimal = false;
    }
    if (minimal) result.frontier.push_back(node);
  }
  std::sort(result.frontier.begin(), result.frontier.end(),
            [](const NodeEvaluation& x, const NodeEvaluation& y) {
              return x.set < y.set;
            });
  if (!result.best) result.full_set_sensitivity = nodes[count - 1].sensitivity;
  return result;
}

}  // namespace attrsel
