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

#ifndef ATTRSEL_CONFIG_H_
#define ATTRSEL_CONFIG_H_

#include <optional>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace attrsel {

// Usability cost weights. |epsilon| is a per-attribute base cost that keeps
// the cost strictly increasing even for free or empty-valued attributes.
struct CostWeights {
  double size = 1.0;         // Per average byte of the projected fingerprint.
  double instability = 1.0;  // Per unit of attribute change rate.
  double time = 0.0;         // Per average collection millisecond.
  double epsilon = 0.01;

  bool operator==(const CostWeights&) const = default;
};

struct SensitivityParams {
  int submission_budget = 1;
};

enum class Method { kFpSelect, kEntropy, kConditionalEntropy };

// "fpselect", "entropy", "conditional_entropy".
std::string_view MethodName(Method method);
// Also accepts the CLI spelling "cond-entropy".
std::optional<Method> ParseMethod(std::string_view name);

struct ExplorationConfig {
  double threshold_alpha = 0.15;
  int beam_width = 1;
  int submission_budget = 1;
  CostWeights weights;
  Method method = Method::kFpSelect;
  // Disables all three pruning rules. Only meaningful for kFpSelect.
  bool pruning = true;

  SensitivityParams sensitivity_params() const {
    return SensitivityParams{submission_budget};
  }

  bool operator==(const ExplorationConfig&) const = default;
};

// Checks 0 < alpha <= 1, beam_width >= 1, budget >= 1, non-negative finite
// weights and epsilon > 0.
absl::Status ValidateConfig(const ExplorationConfig& config);

// Parses "size=1,instability=0.5,time=0,epsilon=0.01" on top of |base|.
// Unlisted keys keep their value from |base|.
absl::StatusOr<CostWeights> ParseWeights(std::string_view text,
                                         CostWeights base = {});

}  // namespace attrsel

#endif  // ATTRSEL_CONFIG_H_
