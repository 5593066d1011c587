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

// Greedy entropy baselines. Both stop at the first selection whose
// sensitivity meets the run's threshold, so their results are comparable with
// FpSelect's.

#ifndef ATTRSEL_BASELINES_H_
#define ATTRSEL_BASELINES_H_

#include "absl/status/statusor.h"
#include "attrsel/config.h"
#include "attrsel/explorer.h"
#include "attrsel/measures.h"
#include "attrsel/selection.h"
#include "attrsel/trace.h"

namespace attrsel {

// Ranks attributes once by marginal entropy (ties: lower index first) and adds
// them in that order.
absl::StatusOr<SelectionResult> EntropySelect(const MeasureEngine& engine,
                                              const ExplorationConfig& config,
                                              TraceSink& sink,
                                              const RunOptions& options = {});

// Adds, one at a time, the attribute with the largest entropy gain given the
// current selection (ties: lower index first).
absl::StatusOr<SelectionResult> ConditionalEntropySelect(
    const MeasureEngine& engine, const ExplorationConfig& config,
    TraceSink& sink, const RunOptions& options = {});

// Dispatches on config.method.
absl::StatusOr<SelectionResult> RunSelection(const MeasureEngine& engine,
                                             const ExplorationConfig& config,
                                             TraceSink& sink,
                                             const RunOptions& options = {});

}  // namespace attrsel

#endif  // ATTRSEL_BASELINES_H_
