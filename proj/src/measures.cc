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

#include "attrsel/measures.h"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace attrsel {

namespace {
constexpr int kSampleSize = 10;
}  // namespace

absl::StatusOr<double> Efficiency(double cost_full, double cost,
                                  double sensitivity) {
  if (cost > cost_full) {
    return absl::InternalError(absl::StrCat(
        "NegativeReduction: node cost ", cost, " exceeds full-set cost ",
        cost_full));
  }
  if (sensitivity == 0.0) return kInfiniteEfficiency;
  return (cost_full - cost) / sensitivity;
}

MeasureEngine::MeasureEngine(const Dataset& dataset) : dataset_(dataset) {
  const int n = dataset.num_attributes();
  for (const auto& [browser, positions] : dataset.browser_index()) {
    browsers_.push_back(positions.back());
  }
  const auto& records = dataset.records();
  codes_.resize(n);
  avg_bytes_.assign(n, 0.0);
  collection_ms_.assign(n, 0.0);
  changes_.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    std::vector<std::string_view> distinct;
    double total_bytes = 0;
    for (int record : browsers_) {
      distinct.push_back(records[record].values[a]);
      total_bytes += static_cast<double>(records[record].values[a].size());
    }
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    codes_[a].reserve(browsers_.size());
    for (int record : browsers_) {
      const auto it = std::lower_bound(distinct.begin(), distinct.end(),
                                       records[record].values[a]);
      codes_[a].push_back(static_cast<uint32_t>(it - distinct.begin()));
    }
    avg_bytes_[a] = total_bytes / static_cast<double>(browsers_.size());
    collection_ms_[a] =
        dataset.attributes()[a].avg_collection_time_ms.value_or(0.0);
  }
  for (const ConsecutivePair& pair : ConsecutivePairs(dataset)) {
    ++num_pairs_;
    for (int a = 0; a < n; ++a) {
      if ((*pair.earlier)[a] != (*pair.later)[a]) ++changes_[a];
    }
  }
}

const std::string& MeasureEngine::digest() const {
  std::call_once(digest_once_, [this] { digest_ = DatasetDigest(dataset_); });
  return digest_;
}

absl::Status MeasureEngine::ValidateSet(const AttributeSet& set) const {
  if (set.Span() > num_attributes()) {
    return absl::OutOfRangeError(absl::StrCat(
        "IndexOutOfRange: attribute ", set.Span() - 1, " >= ",
        num_attributes()));
  }
  return absl::OkStatus();
}

std::shared_ptr<const MeasureEngine::Partition> MeasureEngine::GetPartition(
    const AttributeSet& set) const {
  {
    std::shared_lock lock(cache_mutex_);
    if (auto it = cache_.find(set); it != cache_.end()) return it->second;
  }
  auto partition = ComputePartition(set);
  std::unique_lock lock(cache_mutex_);
  // Another thread may have inserted the same key; the values are equal.
  return cache_.try_emplace(set, std::move(partition)).first->second;
}

std::shared_ptr<const MeasureEngine::Partition>
MeasureEngine::ComputePartition(const AttributeSet& set) const {
  const std::vector<int> members = set.Members();
  const int num = num_browsers();
  auto less = [&](int x, int y) {
    for (int a : members) {
      if (codes_[a][x] != codes_[a][y]) return codes_[a][x] < codes_[a][y];
    }
    return false;
  };
  std::vector<int> order(num);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), less);

  // Runs of equal projections, in lexicographic order of their values.
  std::vector<std::pair<int, int>> classes;  // (count, representative)
  for (int i = 0; i < num;) {
    int j = i + 1;
    while (j < num && !less(order[i], order[j])) ++j;
    classes.emplace_back(j - i, order[i]);
    i = j;
  }
  std::stable_sort(classes.begin(), classes.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  auto partition = std::make_shared<Partition>();
  partition->counts.reserve(classes.size());
  partition->representatives.reserve(classes.size());
  for (const auto& [count, representative] : classes) {
    partition->counts.push_back(count);
    partition->representatives.push_back(representative);
  }
  return partition;
}

absl::StatusOr<std::vector<ProjectedClass>> MeasureEngine::Project(
    const AttributeSet& set) const {
  if (auto status = ValidateSet(set); !status.ok()) return status;
  const auto partition = GetPartition(set);
  const std::vector<int> members = set.Members();
  std::vector<ProjectedClass> classes;
  classes.reserve(partition->counts.size());
  for (size_t c = 0; c < partition->counts.size(); ++c) {
    const auto& values =
        dataset_.records()[browsers_[partition->representatives[c]]].values;
    ProjectedClass projected;
    projected.count = partition->counts[c];
    for (int a : members) projected.values.push_back(values[a]);
    classes.push_back(std::move(projected));
  }
  return classes;
}

double MeasureEngine::EntropyBits(const AttributeSet& set) const {
  const auto partition = GetPartition(set);
  const double total = num_browsers();
  double sum = 0.0;
  for (int count : partition->counts) {
    if (count > 1) sum += count * std::log2(static_cast<double>(count));
  }
  const double entropy = std::log2(total) - sum / total;
  return entropy > 0.0 ? entropy : 0.0;
}

absl::StatusOr<double> MeasureEngine::ConditionalEntropyGain(
    const AttributeSet& base, int candidate) const {
  if (base.Contains(candidate)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "CandidateAlreadySelected: attribute ", candidate, " is in ",
        base.DebugString()));
  }
  if (candidate < 0 || candidate >= num_attributes()) {
    return absl::OutOfRangeError(
        absl::StrCat("IndexOutOfRange: attribute ", candidate));
  }
  const double gain = EntropyBits(base.With(candidate)) - EntropyBits(base);
  return gain > 0.0 ? gain : 0.0;
}

double MeasureEngine::Sensitivity(const AttributeSet& set,
                                  const SensitivityParams& params) const {
  const auto partition = GetPartition(set);
  const size_t k = static_cast<size_t>(std::max(params.submission_budget, 1));
  if (partition->counts.size() <= k) return 1.0;
  int64_t impersonated = 0;
  for (size_t c = 0; c < k; ++c) impersonated += partition->counts[c];
  return static_cast<double>(impersonated) / num_browsers();
}

double MeasureEngine::ChangeRate(int attribute) const {
  if (num_pairs_ == 0) return 0.0;
  return static_cast<double>(changes_[attribute]) / num_pairs_;
}

double MeasureEngine::Instability(const AttributeSet& set) const {
  if (num_pairs_ == 0 || set.empty()) return 0.0;
  int64_t changed = 0;
  const std::vector<int> members = set.Members();
  for (int a : members) changed += changes_[a];
  return static_cast<double>(changed) /
         (static_cast<double>(num_pairs_) * members.size());
}

double MeasureEngine::AverageSizeBytes(const AttributeSet& set) const {
  double total = 0.0;
  for (int a : set.Members()) total += avg_bytes_[a];
  return total;
}

double MeasureEngine::CollectionTimeMs(const AttributeSet& set) const {
  double total = 0.0;
  for (int a : set.Members()) total += collection_ms_[a];
  return total;
}

double MeasureEngine::UsabilityCost(const AttributeSet& set,
                                    const CostWeights& weights) const {
  if (set.empty()) return 0.0;
  double change_rates = 0.0;
  for (int a : set.Members()) change_rates += ChangeRate(a);
  return CostLowerBound(set, weights) + weights.instability * change_rates;
}

double MeasureEngine::CostLowerBound(const AttributeSet& set,
                                     const CostWeights& weights) const {
  if (set.empty()) return 0.0;
  return weights.size * AverageSizeBytes(set) +
         weights.time * CollectionTimeMs(set) + weights.epsilon * set.size();
}

double MeasureEngine::Unicity(const AttributeSet& set) const {
  const auto partition = GetPartition(set);
  int singletons = 0;
  for (int count : partition->counts) {
    if (count == 1) ++singletons;
  }
  return static_cast<double>(singletons) / num_browsers();
}

NodeEvaluation MeasureEngine::Evaluate(const AttributeSet& set,
                                       const ExplorationConfig& config,
                                       double cost_full) const {
  NodeEvaluation node;
  node.set = set;
  node.cost = UsabilityCost(set, config.weights);
  node.sensitivity = Sensitivity(set, config.sensitivity_params());
  node.satisfying = node.sensitivity <= config.threshold_alpha;
  // Subsets of the candidate attributes never cost more than the full set;
  // clamp rounding noise from summing in a different order.
  node.efficiency = Efficiency(cost_full, std::min(node.cost, cost_full),
                               node.sensitivity)
                        .value();
  return node;
}

AttributeSetProperties MeasureEngine::Properties(
    const AttributeSet& set, const ExplorationConfig& config) const {
  AttributeSetProperties properties;
  const double cost_full =
      UsabilityCost(AttributeSet::Full(num_attributes()), config.weights);
  properties.evaluation = Evaluate(set, config, cost_full);
  properties.entropy_bits = EntropyBits(set);
  properties.unicity = Unicity(set);
  properties.stability = 1.0 - Instability(set);
  auto classes = Project(set);
  if (classes.ok()) {
    if (classes->size() > kSampleSize) classes->resize(kSampleSize);
    properties.sample = *std::move(classes);
  }
  return properties;
}

}  // namespace attrsel
