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

#include "attrsel/report.h"

#include <algorithm>
#include <cmath>
#include <future>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "attrsel/baselines.h"
#include "attrsel/trace.h"
#include "string_compat.h"

namespace attrsel {

namespace {

int EditDistance(std::string_view a, std::string_view b) {
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (size_t j = 1; j <= b.size(); ++j) {
      const int substitute = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, substitute});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

OrderedJson Number(double value) {
  if (std::isinf(value)) return "inf";
  return value;
}

}  // namespace

std::vector<std::string> AttributeNames(const Dataset& dataset) {
  std::vector<std::string> names;
  for (const Attribute& a : dataset.attributes()) names.push_back(a.name);
  return names;
}

std::vector<std::string> SetNames(const AttributeSet& set,
                                  const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (int a : set.Members()) {
    out.push_back(a < static_cast<int>(names.size()) ? names[a]
                                                     : absl::StrCat("#", a));
  }
  return out;
}

std::vector<std::string> SetNames(const AttributeSet& set,
                                  const Dataset& dataset) {
  return SetNames(set, AttributeNames(dataset));
}

std::string FormatSet(const AttributeSet& set,
                      const std::vector<std::string>& names) {
  if (set.empty()) return "(empty)";
  return absl::StrJoin(SetNames(set, names), ", ");
}

std::string FormatSet(const AttributeSet& set, const Dataset& dataset) {
  return FormatSet(set, AttributeNames(dataset));
}

std::vector<std::string> NearMatches(std::string_view name,
                                     const Dataset& dataset) {
  const std::string lowered = absl::AsciiStrToLower(internal::Absl(name));
  std::vector<std::pair<int, std::string>> scored;
  for (const Attribute& attribute : dataset.attributes()) {
    const int distance =
        EditDistance(lowered, absl::AsciiStrToLower(attribute.name));
    if (distance <= 2) scored.emplace_back(distance, attribute.name);
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::string> matches;
  for (size_t i = 0; i < scored.size() && i < 3; ++i) {
    matches.push_back(scored[i].second);
  }
  return matches;
}

absl::StatusOr<AttributeSet> ResolveAttributes(
    const Dataset& dataset, const std::vector<std::string>& names) {
  std::vector<int> indices;
  std::vector<std::string> problems;
  for (const std::string& name : names) {
    if (auto index = dataset.AttributeIndex(name)) {
      indices.push_back(*index);
      continue;
    }
    std::string problem = absl::StrCat("'", name, "'");
    const std::vector<std::string> near = NearMatches(name, dataset);
    if (!near.empty()) {
      absl::StrAppend(&problem, " (did you mean '",
                      absl::StrJoin(near, "', '"), "'?)");
    }
    problems.push_back(std::move(problem));
  }
  if (!problems.empty()) {
    return absl::NotFoundError(
        absl::StrCat("UnknownAttribute: ", absl::StrJoin(problems, ", ")));
  }
  return AttributeSet(indices);
}

OrderedJson StatsToJson(const DatasetStats& stats) {
  OrderedJson out;
  out["n_attributes"] = stats.n_attributes;
  out["n_browsers"] = stats.n_browsers;
  out["n_records"] = stats.n_records;
  out["distinct_full_fingerprints"] = stats.distinct_full_fingerprints;
  out["unicity_rate"] = stats.unicity_rate;
  return out;
}

OrderedJson NodeToJson(const NodeEvaluation& node,
                       const std::vector<std::string>& names) {
  OrderedJson out;
  out["set"] = node.set.Members();
  out["attributes"] = SetNames(node.set, names);
  out["cost"] = node.cost;
  out["sensitivity"] = node.sensitivity;
  out["efficiency"] = Number(node.efficiency);
  out["satisfying"] = node.satisfying;
  return out;
}

OrderedJson NodeToJson(const NodeEvaluation& node, const Dataset& dataset) {
  return NodeToJson(node, AttributeNames(dataset));
}

OrderedJson PropertiesToJson(const AttributeSetProperties& properties,
                             const Dataset& dataset) {
  OrderedJson out = NodeToJson(properties.evaluation, dataset);
  out["entropy_bits"] = properties.entropy_bits;
  out["unicity"] = properties.unicity;
  out["stability"] = properties.stability;
  OrderedJson sample = OrderedJson::array();
  for (const ProjectedClass& projected : properties.sample) {
    OrderedJson row;
    row["values"] = projected.values;
    row["browsers"] = projected.count;
    sample.push_back(std::move(row));
  }
  out["sample"] = std::move(sample);
  return out;
}

OrderedJson ConfigToJson(const ExplorationConfig& config) {
  OrderedJson weights;
  weights["size"] = config.weights.size;
  weights["instability"] = config.weights.instability;
  weights["time"] = config.weights.time;
  weights["epsilon"] = config.weights.epsilon;
  OrderedJson out;
  out["method"] = MethodName(config.method);
  out["threshold"] = config.threshold_alpha;
  out["beam_width"] = config.beam_width;
  out["budget"] = config.submission_budget;
  out["weights"] = std::move(weights);
  out["pruning"] = config.pruning;
  return out;
}

OrderedJson SelectionToJson(const SelectionResult& result,
                            const std::vector<std::string>& names) {
  OrderedJson out;
  out["method"] = MethodName(result.method);
  out["status"] = result.best ? "ok" : "threshold_unreachable";
  out["best"] = result.best ? NodeToJson(*result.best, names)
                            : OrderedJson(nullptr);
  OrderedJson frontier = OrderedJson::array();
  for (const NodeEvaluation& node : result.frontier) {
    frontier.push_back(NodeToJson(node, names));
  }
  out["frontier"] = std::move(frontier);
  out["explored_count"] = result.explored_count;
  out["pruned_count"] = result.pruned_count;
  out["steps"] = result.steps;
  out["full_set_sensitivity"] = result.full_set_sensitivity
                                    ? OrderedJson(*result.full_set_sensitivity)
                                    : OrderedJson(nullptr);
  return out;
}

OrderedJson SelectionToJson(const SelectionResult& result,
                            const Dataset& dataset) {
  return SelectionToJson(result, AttributeNames(dataset));
}

absl::StatusOr<ExplorationConfig> ConfigFromRequest(const OrderedJson& body) {
  ExplorationConfig config;
  if (!body.is_object()) {
    return absl::InvalidArgumentError("InvalidConfig: body must be an object");
  }
  try {
    if (body.contains("method")) {
      const auto method = ParseMethod(body["method"].get<std::string>());
      if (!method) {
        return absl::InvalidArgumentError(absl::StrCat(
            "InvalidConfig: unknown method '",
            body["method"].get<std::string>(), "'"));
      }
      config.method = *method;
    }
    if (body.contains("threshold")) {
      config.threshold_alpha = body["threshold"].get<double>();
    }
    if (body.contains("budget")) {
      config.submission_budget = body["budget"].get<int>();
    }
    if (body.contains("beam_width")) {
      config.beam_width = body["beam_width"].get<int>();
    } else if (body.contains("paths")) {
      config.beam_width = body["paths"].get<int>();
    }
    if (body.contains("pruning")) config.pruning = body["pruning"].get<bool>();
    if (body.contains("weights")) {
      const OrderedJson& weights = body["weights"];
      if (weights.is_string()) {
        auto parsed = ParseWeights(weights.get<std::string>());
        if (!parsed.ok()) return parsed.status();
        config.weights = *parsed;
      } else if (weights.is_object()) {
        for (const auto& [key, value] : weights.items()) {
          const double v = value.get<double>();
          if (key == "size") {
            config.weights.size = v;
          } else if (key == "instability") {
            config.weights.instability = v;
          } else if (key == "time") {
            config.weights.time = v;
          } else if (key == "epsilon") {
            config.weights.epsilon = v;
          } else {
            return absl::InvalidArgumentError(
                absl::StrCat("InvalidConfig: unknown weight '", key, "'"));
          }
        }
      } else {
        return absl::InvalidArgumentError(
            "InvalidConfig: weights must be an object or a string");
      }
    }
  } catch (const OrderedJson::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("InvalidConfig: ", e.what()));
  }
  if (auto status = ValidateConfig(config); !status.ok()) return status;
  return config;
}

std::vector<ComparisonRow> CompareMethods(const MeasureEngine& engine,
                                          const ExplorationConfig& config) {
  const Method methods[] = {Method::kFpSelect, Method::kEntropy,
                            Method::kConditionalEntropy};
  std::vector<std::future<ComparisonRow>> futures;
  for (Method method : methods) {
    futures.push_back(std::async(std::launch::async, [&engine, config,
                                                      method] {
      ExplorationConfig run_config = config;
      run_config.method = method;
      ComparisonRow row;
      row.method = method;
      NullTraceSink sink;
      auto result = RunSelection(engine, run_config, sink);
      if (!result.ok()) {
        row.status = result.status();
        return row;
      }
      row.status = ThresholdStatus(*result, run_config.threshold_alpha);
      if (result->best) {
        row.properties = engine.Properties(result->best->set, run_config);
      }
      row.result = *std::move(result);
      return row;
    }));
  }
  std::vector<ComparisonRow> rows;
  for (auto& future : futures) rows.push_back(future.get());
  return rows;
}

OrderedJson ComparisonToJson(const std::vector<ComparisonRow>& rows,
                             const Dataset& dataset) {
  OrderedJson out = OrderedJson::array();
  for (const ComparisonRow& row : rows) {
    OrderedJson item;
    item["method"] = MethodName(row.method);
    if (row.status.ok()) {
      item["status"] = "ok";
    } else if (absl::IsFailedPrecondition(row.status) && row.result) {
      item["status"] = "threshold_unreachable";
    } else {
      item["status"] = "error";
    }
    item["error"] = row.status.ok() ? OrderedJson(nullptr)
                                    : OrderedJson(std::string(
                                          row.status.message()));
    if (row.properties) {
      item["selected"] = PropertiesToJson(*row.properties, dataset);
    } else {
      item["selected"] = nullptr;
    }
    item["explored_count"] =
        row.result ? OrderedJson(row.result->explored_count)
                   : OrderedJson(nullptr);
    item["full_set_sensitivity"] =
        row.result && row.result->full_set_sensitivity
            ? OrderedJson(*row.result->full_set_sensitivity)
            : OrderedJson(nullptr);
    out.push_back(std::move(item));
  }
  return out;
}

std::string FormatComparison(const std::vector<ComparisonRow>& rows,
                             const Dataset& dataset) {
  std::string out = absl::StrFormat(
      "%-20s %-40s %10s %11s %9s %8s %9s %9s\n", "method", "selected", "cost",
      "sensitivity", "entropy", "unicity", "stability", "explored");
  for (const ComparisonRow& row : rows) {
    if (row.properties) {
      const AttributeSetProperties& p = *row.properties;
      absl::StrAppend(
          &out, absl::StrFormat("%-20s %-40s %10.4f %11.4f %9.4f %8.4f %9.4f "
                                "%9d\n",
                                std::string(MethodName(row.method)),
                                FormatSet(p.evaluation.set, dataset),
                                p.evaluation.cost, p.evaluation.sensitivity,
                                p.entropy_bits, p.unicity, p.stability,
                                row.result->explored_count));
    } else {
      absl::StrAppend(&out, absl::StrFormat("%-20s %s\n",
                                            std::string(MethodName(row.method)),
                                            row.status.message()));
    }
  }
  return out;
}

}  // namespace attrsel
