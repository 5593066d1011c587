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

#include "attrsel/dataset.h"

#include <openssl/sha.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "attrsel/text_formats.h"

namespace attrsel {

absl::StatusOr<Dataset> Dataset::Create(
    std::vector<Attribute> attributes, std::vector<FingerprintRecord> records) {
  if (attributes.empty()) {
    return absl::InvalidArgumentError("MalformedHeader: no attribute columns");
  }
  if (records.empty()) {
    return absl::InvalidArgumentError("EmptyDataset: no fingerprint records");
  }
  std::set<std::string_view> names;
  for (size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i].name.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("MalformedHeader: attribute ", i, " has an empty name"));
    }
    if (!names.insert(attributes[i].name).second) {
      return absl::InvalidArgumentError(absl::StrCat(
          "DuplicateAttributeName: '", attributes[i].name, "'"));
    }
    attributes[i].index = static_cast<int>(i);
  }
  Dataset dataset;
  for (size_t r = 0; r < records.size(); ++r) {
    if (records[r].values.size() != attributes.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "RowArityMismatch: row ", r + 1, " has ", records[r].values.size(),
          " values, expected ", attributes.size()));
    }
    dataset.browser_index_[records[r].browser_id].push_back(
        static_cast<int>(r));
  }
  for (auto& [browser, positions] : dataset.browser_index_) {
    std::stable_sort(positions.begin(), positions.end(), [&](int a, int b) {
      return records[a].timestamp < records[b].timestamp;
    });
  }
  dataset.attributes_ = std::move(attributes);
  dataset.records_ = std::move(records);
  return dataset;
}

std::optional<int> Dataset::AttributeIndex(std::string_view name) const {
  for (const Attribute& attribute : attributes_) {
    if (attribute.name == name) return attribute.index;
  }
  return std::nullopt;
}

namespace {

absl::Status AttachMetadata(std::string_view metadata_text,
                            std::vector<Attribute>& attributes) {
  auto entries = ParseKeyValueDocument(metadata_text);
  if (!entries.ok()) return entries.status();
  for (const KeyValueEntry& entry : *entries) {
    auto it = std::find_if(
        attributes.begin(), attributes.end(),
        [&](const Attribute& a) { return a.name == entry.key; });
    if (it == attributes.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("MalformedMetadata: unknown attribute '", entry.key,
                       "' on line ", entry.line));
    }
    double ms = 0;
    if (!absl::SimpleAtod(entry.value, &ms) || !std::isfinite(ms) || ms < 0) {
      return absl::InvalidArgumentError(absl::StrCat(
          "MalformedMetadata: collection time for '", entry.key,
          "' must be a non-negative number (line ", entry.line, ")"));
    }
    it->avg_collection_time_ms = ms;
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Dataset> ParseCanonicalCsv(std::string_view csv_text,
                                          std::string_view metadata_text) {
  auto rows = ParseCsv(csv_text);
  if (!rows.ok()) return rows.status();
  if (rows->empty()) {
    return absl::InvalidArgumentError("EmptyDataset: file is empty");
  }
  const std::vector<std::string>& header = rows->front().fields;
  if (header.size() < 2 || header[0] != "browser_id" ||
      header[1] != "timestamp") {
    return absl::InvalidArgumentError(
        "MalformedHeader: expected 'browser_id,timestamp,<attributes...>'");
  }
  std::vector<Attribute> attributes;
  for (size_t i = 2; i < header.size(); ++i) {
    attributes.push_back(Attribute{static_cast<int>(i - 2), header[i], {}});
  }
  if (!metadata_text.empty()) {
    if (auto status = AttachMetadata(metadata_text, attributes); !status.ok()) {
      return status;
    }
  }
  std::vector<FingerprintRecord> records;
  records.reserve(rows->size() - 1);
  for (size_t r = 1; r < rows->size(); ++r) {
    CsvRow& row = (*rows)[r];
    if (row.fields.size() != header.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "RowArityMismatch: row ", r, " (line ", row.line, ") has ",
          row.fields.size(), " fields, header has ", header.size()));
    }
    FingerprintRecord record;
    if (!absl::SimpleAtoi(row.fields[1], &record.timestamp)) {
      return absl::InvalidArgumentError(
          absl::StrCat("MalformedTimestamp: row ", r, " (line ", row.line,
                       ") has timestamp '", row.fields[1], "'"));
    }
    record.browser_id = std::move(row.fields[0]);
    record.values.assign(std::make_move_iterator(row.fields.begin() + 2),
                         std::make_move_iterator(row.fields.end()));
    records.push_back(std::move(record));
  }
  return Dataset::Create(std::move(attributes), std::move(records));
}

absl::StatusOr<Dataset> LoadCsv(const std::string& path,
                                const std::string& metadata_path) {
  auto text = ReadFileToString(path);
  if (!text.ok()) return text.status();
  std::string metadata;
  if (!metadata_path.empty()) {
    auto meta = ReadFileToString(metadata_path);
    if (!meta.ok()) return meta.status();
    metadata = *std::move(meta);
  }
  return ParseCanonicalCsv(*text, metadata);
}

std::string SerializeCanonicalCsv(const Dataset& dataset) {
  std::vector<std::string> header = {"browser_id", "timestamp"};
  for (const Attribute& attribute : dataset.attributes()) {
    header.push_back(attribute.name);
  }
  std::string out = CsvLine(header);
  for (const FingerprintRecord& record : dataset.records()) {
    std::vector<std::string> fields;
    fields.reserve(record.values.size() + 2);
    fields.push_back(record.browser_id);
    fields.push_back(absl::StrCat(record.timestamp));
    fields.insert(fields.end(), record.values.begin(), record.values.end());
    out += CsvLine(fields);
  }
  return out;
}

std::string DatasetDigest(const Dataset& dataset) {
  const std::string bytes = SerializeCanonicalCsv(dataset);
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(),
         digest);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * SHA256_DIGEST_LENGTH);
  for (unsigned char byte : digest) {
    hex.push_back(kHex[byte >> 4]);
    hex.push_back(kHex[byte & 0xf]);
  }
  return hex;
}

std::map<std::string, std::vector<std::string>> LatestFingerprints(
    const Dataset& dataset) {
  std::map<std::string, std::vector<std::string>> latest;
  for (const auto& [browser, positions] : dataset.browser_index()) {
    latest.emplace(browser, dataset.records()[positions.back()].values);
  }
  return latest;
}

std::vector<ConsecutivePair> ConsecutivePairs(const Dataset& dataset) {
  std::vector<ConsecutivePair> pairs;
  for (const auto& [browser, positions] : dataset.browser_index()) {
    for (size_t i = 1; i < positions.size(); ++i) {
      pairs.push_back(ConsecutivePair{
          browser, &dataset.records()[positions[i - 1]].values,
          &dataset.records()[positions[i]].values});
    }
  }
  return pairs;
}

DatasetStats ComputeStats(const Dataset& dataset) {
  DatasetStats stats;
  stats.n_attributes = dataset.num_attributes();
  stats.n_browsers = dataset.num_browsers();
  stats.n_records = dataset.num_records();
  std::map<std::vector<std::string>, int> counts;
  for (auto& [browser, values] : LatestFingerprints(dataset)) {
    ++counts[std::move(values)];
  }
  stats.distinct_full_fingerprints = static_cast<int>(counts.size());
  int unique = 0;
  for (const auto& [values, count] : counts) {
    if (count == 1) ++unique;
  }
  stats.unicity_rate =
      static_cast<double>(unique) / static_cast<double>(stats.n_browsers);
  return stats;
}

}  // namespace attrsel
