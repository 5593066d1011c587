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

// Reference implementations used as test oracles. They recompute every
// measure from the raw records with ordered maps and no caching, sharing no
// code with the engine beyond the Dataset container.

#ifndef ATTRSEL_TESTS_ORACLE_H_
#define ATTRSEL_TESTS_ORACLE_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "attrsel/attribute_set.h"
#include "attrsel/config.h"
#include "attrsel/dataset.h"

namespace attrsel::oracle {

// Record position of each browser's latest fingerprint: the largest
// timestamp, the later input row on equal timestamps.
inline std::map<std::string, int> LatestRows(const Dataset& dataset) {
  std::map<std::string, int> latest;
  const auto& records = dataset.records();
  for (int i = 0; i < static_cast<int>(records.size()); ++i) {
    auto [it, inserted] = latest.try_emplace(records[i].browser_id, i);
    if (!inserted && records[it->second].timestamp <= records[i].timestamp) {
      it->second = i;
    }
  }
  return latest;
}

inline std::vector<std::string> Projection(const FingerprintRecord& record,
                                           const std::vector<int>& members) {
  std::vector<std::string> out;
  for (int a : members) out.push_back(record.values[a]);
  return out;
}

// Class sizes of the projection over latest fingerprints, largest first.
inline std::vector<int> ClassSizes(const Dataset& dataset,
                                   const std::vector<int>& members) {
  std::map<std::vector<std::string>, int> classes;
  for (const auto& [browser, row] : LatestRows(dataset)) {
    ++classes[Projection(dataset.records()[row], members)];
  }
  std::vector<int> sizes;
  for (const auto& [key, count] : classes) sizes.push_back(count);
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

inline double Sensitivity(const Dataset& dataset,
                          const std::vector<int>& members, int budget) {
  const std::vector<int> sizes = ClassSizes(dataset, members);
  int total = 0;
  int top = 0;
  for (size_t i = 0; i < sizes.size(); ++i) {
    total += sizes[i];
    if (static_cast<int>(i) < budget) top += sizes[i];
  }
  return static_cast<double>(top) / total;
}

inline double EntropyBits(const Dataset& dataset,
                          const std::vector<int>& members) {
  const std::vector<int> sizes = ClassSizes(dataset, members);
  double total = 0;
  for (int s : sizes) total += s;
  double h = 0;
  for (int s : sizes) {
    const double p = s / total;
    h -= p * std::log2(p);
  }
  return h;
}

// Per-browser records in time order (stable on equal timestamps).
inline std::map<std::string, std::vector<int>> Histories(
    const Dataset& dataset) {
  std::map<std::string, std::vector<int>> histories;
  const auto& records = dataset.records();
  for (int i = 0; i < static_cast<int>(records.size()); ++i) {
    histories[records[i].browser_id].push_back(i);
  }
  for (auto& [browser, rows] : histories) {
    std::stable_sort(rows.begin(), rows.end(), [&](int x, int y) {
      return records[x].timestamp < records[y].timestamp;
    });
  }
  return histories;
}

// (changes of attribute a, number of consecutive pairs).
inline std::pair<int, int> Changes(const Dataset& dataset, int a) {
  int changes = 0;
  int pairs = 0;
  for (const auto& [browser, rows] : Histories(dataset)) {
    for (size_t i = 1; i < rows.size(); ++i) {
      ++pairs;
      if (dataset.records()[rows[i - 1]].values[a] !=
          dataset.records()[rows[i]].values[a]) {
        ++changes;
      }
    }
  }
  return {changes, pairs};
}

inline double Cost(const Dataset& dataset, const std::vector<int>& members,
                   const CostWeights& w) {
  if (members.empty()) return 0.0;
  const auto latest = LatestRows(dataset);
  double bytes = 0;
  for (const auto& [browser, row] : latest) {
    for (int a : members) bytes += dataset.records()[row].values[a].size();
  }
  bytes /= static_cast<double>(latest.size());
  double time = 0;
  double change_rates = 0;
  for (int a : members) {
    time += dataset.attributes()[a].avg_collection_time_ms.value_or(0.0);
    const auto [changes, pairs] = Changes(dataset, a);
    if (pairs > 0) change_rates += static_cast<double>(changes) / pairs;
  }
  return w.size * bytes + w.time * time + w.instability * change_rates +
         w.epsilon * static_cast<double>(members.size());
}

struct Optimum {
  std::vector<int> members;
  double cost = 0.0;
};

// Cheapest subset whose sensitivity is at most alpha, by enumeration.
inline std::optional<Optimum> CheapestSatisfying(const Dataset& dataset,
                                                 double alpha, int budget,
                                                 const CostWeights& w) {
  const int n = dataset.num_attributes();
  std::optional<Optimum> best;
  for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask) {
    std::vector<int> members;
    for (int a = 0; a < n; ++a) {
      if (mask & (uint32_t{1} << a)) members.push_back(a);
    }
    if (Sensitivity(dataset, members, budget) > alpha) continue;
    const double cost = Cost(dataset, members, w);
    if (!best || cost < best->cost) best = Optimum{members, cost};
  }
  return best;
}

}  // namespace attrsel::oracle

#endif  // ATTRSEL_TESTS_ORACLE_H_
