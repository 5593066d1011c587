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

#include "attrsel/selection.h"

#include "absl/strings/str_cat.h"

namespace attrsel {

absl::Status ThresholdStatus(const SelectionResult& result, double alpha) {
  if (result.best) return absl::OkStatus();
  return absl::FailedPreconditionError(absl::StrCat(
      "ThresholdUnreachable: the full attribute set has sensitivity ",
      result.full_set_sensitivity.value_or(1.0), " > threshold ", alpha));
}

bool IsBetterBest(const NodeEvaluation& candidate,
                  const NodeEvaluation& incumbent) {
  if (candidate.cost != incumbent.cost) return candidate.cost < incumbent.cost;
  return candidate.set < incumbent.set;
}

}  // namespace attrsel
