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

#ifndef ATTRSEL_DATASET_H_
#define ATTRSEL_DATASET_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace attrsel {

struct Attribute {
  int index = 0;
  std::string name;
  std::optional<double> avg_collection_time_ms;

  bool operator==(const Attribute&) const = default;
};

struct FingerprintRecord {
  std::string browser_id;
  int64_t timestamp = 0;  // Epoch milliseconds.
  std::vector<std::string> values;

  bool operator==(const FingerprintRecord&) const = default;
};

// (browser, earlier record, later record) for two records of one browser that
// are adjacent in time.
struct ConsecutivePair {
  std::string_view browser_id;
  const std::vector<std::string>* earlier = nullptr;
  const std::vector<std::string>* later = nullptr;
};

struct DatasetStats {
  int n_attributes = 0;
  int n_browsers = 0;
  int n_records = 0;
  int distinct_full_fingerprints = 0;
  double unicity_rate = 0.0;
};

// An immutable table of fingerprint records. Records keep their input order;
// the per-browser index lists each browser's records sorted by timestamp,
// with equal timestamps kept in input order.
class Dataset {
 public:
  // Validates and indexes. Fails with EmptyDataset, DuplicateAttributeName or
  // RowArityMismatch.
  static absl::StatusOr<Dataset> Create(std::vector<Attribute> attributes,
                                        std::vector<FingerprintRecord> records);

  const std::vector<Attribute>& attributes() const { return attributes_; }
  const std::vector<FingerprintRecord>& records() const { return records_; }
  int num_attributes() const { return static_cast<int>(attributes_.size()); }
  int num_browsers() const { return static_cast<int>(browser_index_.size()); }
  int num_records() const { return static_cast<int>(records_.size()); }

  // browser_id -> record positions in time order.
  const std::map<std::string, std::vector<int>>& browser_index() const {
    return browser_index_;
  }

  std::optional<int> AttributeIndex(std::string_view name) const;

 private:
  Dataset() = default;

  std::vector<Attribute> attributes_;
  std::vector<FingerprintRecord> records_;
  std::map<std::string, std::vector<int>> browser_index_;
};

// Reads a canonical CSV ("browser_id,timestamp,<attr>...") and, when
// |metadata_path| is non-empty, a sidecar "name = avg_collection_time_ms"
// document.
absl::StatusOr<Dataset> LoadCsv(const std::string& path,
                                const std::string& metadata_path = "");
absl::StatusOr<Dataset> ParseCanonicalCsv(std::string_view csv_text,
                                          std::string_view metadata_text = "");

// Canonical CSV bytes for |dataset|. Loading the result yields an equal
// dataset, and serializing again yields the same bytes.
std::string SerializeCanonicalCsv(const Dataset& dataset);

// Hex SHA-256 of the canonical CSV bytes.
std::string DatasetDigest(const Dataset& dataset);

// The value sequence of each browser's latest record.
std::map<std::string, std::vector<std::string>> LatestFingerprints(
    const Dataset& dataset);

std::vector<ConsecutivePair> ConsecutivePairs(const Dataset& dataset);

DatasetStats ComputeStats(const Dataset& dataset);

}  // namespace attrsel

#endif  // ATTRSEL_DATASET_H_
