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

// Measurements of attribute sets over the latest-fingerprint population of a
// dataset: the top-k dictionary attacker's sensitivity, the usability cost,
// the efficiency used to rank lattice nodes, and entropy-style properties.

#ifndef ATTRSEL_MEASURES_H_
#define ATTRSEL_MEASURES_H_

#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "attrsel/attribute_set.h"
#include "attrsel/config.h"
#include "attrsel/dataset.h"

namespace attrsel {

inline constexpr double kInfiniteEfficiency =
    std::numeric_limits<double>::infinity();

struct NodeEvaluation {
  AttributeSet set;
  double cost = 0.0;
  double sensitivity = 1.0;
  double efficiency = 0.0;  // kInfiniteEfficiency iff sensitivity == 0.
  bool satisfying = false;

  bool operator==(const NodeEvaluation&) const = default;
};

// One class of browsers sharing a projected fingerprint.
struct ProjectedClass {
  std::vector<std::string> values;  // One per selected attribute, in order.
  int count = 0;

  bool operator==(const ProjectedClass&) const = default;
};

struct AttributeSetProperties {
  NodeEvaluation evaluation;
  double entropy_bits = 0.0;
  double unicity = 0.0;
  double stability = 1.0;
  std::vector<ProjectedClass> sample;  // Up to 10 most common classes.
};

// (cost(A) - cost(C)) / sensitivity(C), with A the candidate attributes.
// Returns kInfiniteEfficiency when |sensitivity| is 0 and NegativeReduction
// when |cost| exceeds |cost_full|.
absl::StatusOr<double> Efficiency(double cost_full, double cost,
                                  double sensitivity);

// Measures over one dataset. The dataset must outlive the engine. All methods
// are thread-safe; partitions are memoized per attribute set.
class MeasureEngine {
 public:
  explicit MeasureEngine(const Dataset& dataset);

  MeasureEngine(const MeasureEngine&) = delete;
  MeasureEngine& operator=(const MeasureEngine&) = delete;

  const Dataset& dataset() const { return dataset_; }
  int num_attributes() const { return dataset_.num_attributes(); }
  int num_browsers() const { return static_cast<int>(browsers_.size()); }

  // DatasetDigest(dataset()), computed once.
  const std::string& digest() const;

  // IndexOutOfRange if |set| names an attribute >= num_attributes().
  absl::Status ValidateSet(const AttributeSet& set) const;

  // Browser classes of the projection, largest first; equal counts are
  // ordered by the lexicographic order of their projected values.
  absl::StatusOr<std::vector<ProjectedClass>> Project(
      const AttributeSet& set) const;

  // Shannon entropy in bits of the projection's class distribution.
  double EntropyBits(const AttributeSet& set) const;

  // EntropyBits(base + candidate) - EntropyBits(base). Fails with
  // CandidateAlreadySelected when |candidate| is in |base|.
  absl::StatusOr<double> ConditionalEntropyGain(const AttributeSet& base,
                                                int candidate) const;

  // Share of browsers covered by the |submission_budget| largest classes.
  double Sensitivity(const AttributeSet& set,
                     const SensitivityParams& params) const;

  // Fraction of (consecutive pair, selected attribute) cells that changed.
  double Instability(const AttributeSet& set) const;

  // Fraction of consecutive pairs in which |attribute| changed.
  double ChangeRate(int attribute) const;

  // Average projected fingerprint size in UTF-8 bytes.
  double AverageSizeBytes(const AttributeSet& set) const;

  // Sum of the per-attribute average collection times (0 when unknown).
  double CollectionTimeMs(const AttributeSet& set) const;

  // size * AverageSizeBytes + time * CollectionTimeMs
  //   + instability * sum of member ChangeRates + epsilon * |set|.
  double UsabilityCost(const AttributeSet& set,
                       const CostWeights& weights) const;

  // epsilon * |set| plus the size and time terms. Never above UsabilityCost.
  double CostLowerBound(const AttributeSet& set,
                        const CostWeights& weights) const;

  // Fraction of browsers alone in their class.
  double Unicity(const AttributeSet& set) const;

  // Measures |set| against |config|. |cost_full| is the cost of the full
  // candidate set under the same weights.
  NodeEvaluation Evaluate(const AttributeSet& set,
                          const ExplorationConfig& config,
                          double cost_full) const;

  AttributeSetProperties Properties(const AttributeSet& set,
                                    const ExplorationConfig& config) const;

 private:
  struct Partition {
    std::vector<int> counts;           // Descending.
    std::vector<int> representatives;  // A browser of each class.
  };

  std::shared_ptr<const Partition> GetPartition(const AttributeSet& set) const;
  std::shared_ptr<const Partition> ComputePartition(
      const AttributeSet& set) const;

  const Dataset& dataset_;
  std::vector<int> browsers_;  // Latest record position of each browser.
  // codes_[a][b]: rank of browser b's value of attribute a among the distinct
  // values of a, so comparing codes compares the value strings.
  std::vector<std::vector<uint32_t>> codes_;
  std::vector<double> avg_bytes_;
  std::vector<double> collection_ms_;
  std::vector<int> changes_;
  int num_pairs_ = 0;

  mutable std::once_flag digest_once_;
  mutable std::string digest_;

  mutable std::shared_mutex cache_mutex_;
  mutable absl::flat_hash_map<AttributeSet, std::shared_ptr<const Partition>>
      cache_;
};

}  // namespace attrsel

#endif  // ATTRSEL_MEASURES_H_
