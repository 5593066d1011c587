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

// Machine-readable (JSON) and human-readable renderings of results. The CLI's
// --json output and the HTTP service bodies share these schemas.

#ifndef ATTRSEL_REPORT_H_
#define ATTRSEL_REPORT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "attrsel/attribute_set.h"
#include "attrsel/config.h"
#include "attrsel/dataset.h"
#include "attrsel/measures.h"
#include "attrsel/selection.h"
#include "json.hpp"

namespace attrsel {

using OrderedJson = nlohmann::ordered_json;

// Attribute names in index order.
std::vector<std::string> AttributeNames(const Dataset& dataset);

// The overloads taking |names| serve traces, which carry attribute names but
// no dataset.
std::vector<std::string> SetNames(const AttributeSet& set,
                                  const std::vector<std::string>& names);
std::vector<std::string> SetNames(const AttributeSet& set,
                                  const Dataset& dataset);

// "Language, Screen"; "(empty)" for the empty set.
std::string FormatSet(const AttributeSet& set,
                      const std::vector<std::string>& names);
std::string FormatSet(const AttributeSet& set, const Dataset& dataset);

// Up to three attribute names within edit distance 2 of |name| (case
// insensitive), closest first.
std::vector<std::string> NearMatches(std::string_view name,
                                     const Dataset& dataset);

// Maps names to indices. Fails with "UnknownAttribute: 'x' (did you mean
// 'y'?)" naming every unknown entry.
absl::StatusOr<AttributeSet> ResolveAttributes(
    const Dataset& dataset, const std::vector<std::string>& names);

OrderedJson StatsToJson(const DatasetStats& stats);
OrderedJson NodeToJson(const NodeEvaluation& node,
                       const std::vector<std::string>& names);
OrderedJson NodeToJson(const NodeEvaluation& node, const Dataset& dataset);
OrderedJson PropertiesToJson(const AttributeSetProperties& properties,
                             const Dataset& dataset);
OrderedJson ConfigToJson(const ExplorationConfig& config);

// {"method", "status": "ok" | "threshold_unreachable", "best", "frontier",
//  "explored_count", "pruned_count", "steps", "full_set_sensitivity"}.
OrderedJson SelectionToJson(const SelectionResult& result,
                            const std::vector<std::string>& names);
OrderedJson SelectionToJson(const SelectionResult& result,
                            const Dataset& dataset);

// Parses the shared request fields ("method", "threshold", "budget",
// "beam_width" or "paths", "weights" object, "pruning") over defaults.
absl::StatusOr<ExplorationConfig> ConfigFromRequest(const OrderedJson& body);

struct ComparisonRow {
  Method method = Method::kFpSelect;
  absl::Status status;  // ThresholdUnreachable or another per-method error.
  std::optional<SelectionResult> result;
  std::optional<AttributeSetProperties> properties;  // Of the selected set.
};

// Runs the three methods concurrently on |engine| with |config| (its method
// field is ignored).
std::vector<ComparisonRow> CompareMethods(const MeasureEngine& engine,
                                          const ExplorationConfig& config);

OrderedJson ComparisonToJson(const std::vector<ComparisonRow>& rows,
                             const Dataset& dataset);

// Plain-text table, one row per method.
std::string FormatComparison(const std::vector<ComparisonRow>& rows,
                             const Dataset& dataset);

}  // namespace attrsel

#endif  // ATTRSEL_REPORT_H_
