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

#include "attrsel/config.h"

#include <cmath>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "string_compat.h"

namespace attrsel {

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kFpSelect:
      return "fpselect";
    case Method::kEntropy:
      return "entropy";
    case Method::kConditionalEntropy:
      return "conditional_entropy";
  }
  return "unknown";
}

std::optional<Method> ParseMethod(std::string_view name) {
  if (name == "fpselect") return Method::kFpSelect;
  if (name == "entropy") return Method::kEntropy;
  if (name == "conditional_entropy" || name == "cond-entropy") {
    return Method::kConditionalEntropy;
  }
  return std::nullopt;
}

absl::Status ValidateConfig(const ExplorationConfig& config) {
  if (!(config.threshold_alpha > 0.0 && config.threshold_alpha <= 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "InvalidConfig: threshold must be in (0, 1], got ",
        config.threshold_alpha));
  }
  if (config.beam_width < 1) {
    return absl::InvalidArgumentError("InvalidConfig: beam width must be >= 1");
  }
  if (config.submission_budget < 1) {
    return absl::InvalidArgumentError(
        "InvalidConfig: submission budget must be >= 1");
  }
  const CostWeights& w = config.weights;
  for (double weight : {w.size, w.instability, w.time, w.epsilon}) {
    if (!std::isfinite(weight) || weight < 0) {
      return absl::InvalidArgumentError(
          "InvalidConfig: cost weights must be finite and non-negative");
    }
  }
  if (!(w.epsilon > 0)) {
    return absl::InvalidArgumentError(
        "InvalidConfig: epsilon must be strictly positive");
  }
  return absl::OkStatus();
}

absl::StatusOr<CostWeights> ParseWeights(std::string_view text,
                                         CostWeights base) {
  CostWeights weights = base;
  for (absl::string_view item :
       absl::StrSplit(internal::Absl(text), ',', absl::SkipWhitespace())) {
    std::pair<absl::string_view, absl::string_view> kv =
        absl::StrSplit(item, absl::MaxSplits('=', 1));
    const absl::string_view key = absl::StripAsciiWhitespace(kv.first);
    double value = 0;
    if (!absl::SimpleAtod(absl::StripAsciiWhitespace(kv.second), &value)) {
      return absl::InvalidArgumentError(
          absl::StrCat("InvalidConfig: bad weight value in '", item, "'"));
    }
    if (key == "size") {
      weights.size = value;
    } else if (key == "instability") {
      weights.instability = value;
    } else if (key == "time") {
      weights.time = value;
    } else if (key == "epsilon") {
      weights.epsilon = value;
    } else {
      return absl::InvalidArgumentError(
          absl::StrCat("InvalidConfig: unknown weight '", key,
                       "' (expected size, instability, time, epsilon)"));
    }
  }
  return weights;
}

}  // namespace attrsel
