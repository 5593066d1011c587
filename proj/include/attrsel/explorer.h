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

// Lattice exploration of attribute sets.
//
// FpSelect walks up the subset lattice from the empty set, keeping a beam of
// at most beam_width unsatisfying nodes. Each step expands every beam node by
// one attribute, evaluates the candidates that survive pruning, records the
// satisfying ones, and keeps the most efficient distinct unsatisfying ones as
// the next beam. Beam nodes grow by one attribute per step, so a run takes at
// most n steps and evaluates at most beam_width * n * (n + 1) / 2 + 1 sets.
//
// Beam ranking: higher efficiency, then lower sensitivity, then lower cost,
// then canonical set order.

#ifndef ATTRSEL_EXPLORER_H_
#define ATTRSEL_EXPLORER_H_

#include <optional>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/status/statusor.h"
#include "attrsel/attribute_set.h"
#include "attrsel/config.h"
#include "attrsel/measures.h"
#include "attrsel/selection.h"
#include "attrsel/trace.h"

namespace attrsel {

struct RunOptions {
  // Measure wall time into the end event. Off by default so that identical
  // runs produce byte-identical traces.
  bool record_duration = false;
};

// What the pruning rules know about a run so far.
struct ExplorerState {
  absl::flat_hash_set<AttributeSet> seen;  // Evaluated or pruned.
  std::vector<AttributeSet> satisfying;
  std::optional<double> best_cost;
};

// node + {a} for every a < n not in node, in ascending a.
std::vector<AttributeSet> Expand(const AttributeSet& node, int n);

// Checks, in order: duplicate (already seen), superset of a satisfying set
// (strictly costlier, so it cannot win), and cost_bound (|cost_lower_bound|
// is at least the best cost found so far).
std::optional<PruneReason> ShouldPrune(const AttributeSet& candidate,
                                       const ExplorerState& state,
                                       double cost_lower_bound);

// Start event for a run of |config| on |engine|'s dataset.
StartEvent MakeStartEvent(const MeasureEngine& engine,
                          const ExplorationConfig& config);

absl::StatusOr<SelectionResult> FpSelect(const MeasureEngine& engine,
                                         const ExplorationConfig& config,
                                         TraceSink& sink,
                                         const RunOptions& options = {});

// Exhaustive reference: evaluates all 2^n subsets. The frontier holds the
// minimal satisfying sets and best is the cheapest satisfying set. Refuses
// more than kMaxBruteForceAttributes attributes (TooManyAttributes).
inline constexpr int kMaxBruteForceAttributes = 20;
absl::StatusOr<SelectionResult> BruteForceFrontier(
    const MeasureEngine& engine, const ExplorationConfig& config);

}  // namespace attrsel

#endif  // ATTRSEL_EXPLORER_H_
