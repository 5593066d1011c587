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

#ifndef ATTRSEL_SELECTION_H_
#define ATTRSEL_SELECTION_H_

#include <optional>
#include <vector>

#include "absl/status/status.h"
#include "attrsel/config.h"
#include "attrsel/measures.h"

namespace attrsel {

// Outcome of one attribute selection run.
//
// |best| is absent exactly when the full candidate set misses the threshold
// (ThresholdUnreachable); |full_set_sensitivity| then holds its sensitivity.
// |frontier| lists every satisfying evaluation in evaluation order.
struct SelectionResult {
  Method method = Method::kFpSelect;
  std::optional<NodeEvaluation> best;
  std::vector<NodeEvaluation> frontier;
  int explored_count = 0;
  int pruned_count = 0;
  int steps = 0;
  std::optional<double> full_set_sensitivity;

  bool operator==(const SelectionResult&) const = default;
};

// OK when |result| has a best set, otherwise a FailedPrecondition status
// starting with "ThresholdUnreachable".
absl::Status ThresholdStatus(const SelectionResult& result, double alpha);

// True when |candidate| should replace |incumbent| as the best set: lower
// cost, or equal cost and earlier in canonical set order.
bool IsBetterBest(const NodeEvaluation& candidate,
                  const NodeEvaluation& incumbent);

}  // namespace attrsel

#endif  // ATTRSEL_SELECTION_H_
