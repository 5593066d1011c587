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

#ifndef ATTRSEL_IMPORT_H_
#define ATTRSEL_IMPORT_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"

namespace attrsel {

// How to turn a third-party fingerprint export into a canonical CSV.
//
// Mapping documents look like:
//
//   browser_id_column = counter
//   timestamp_column  = creationDate
//   timestamp_format  = %Y-%m-%d %H:%M:%S
//   missing_values    = NULL,?
//   [attributes]
//   userAgentHttp = User-Agent
//
// timestamp_format is "epoch_ms", "epoch_s", or a strptime pattern read as
// UTC. Attributes keep the order in which they are listed.
struct ColumnMapping {
  std::string browser_id_column;
  std::string timestamp_column;
  std::string timestamp_format = "epoch_ms";
  std::vector<std::string> missing_values;
  // (source column, canonical attribute name).
  std::vector<std::pair<std::string, std::string>> attributes;
};

absl::StatusOr<ColumnMapping> ParseColumnMapping(std::string_view text);
absl::StatusOr<ColumnMapping> LoadColumnMapping(const std::string& path);

// Parses one timestamp cell into epoch milliseconds.
absl::StatusOr<int64_t> ParseTimestamp(std::string_view text,
                                       std::string_view format);

// Converts a source CSV to canonical CSV text. Unmapped columns are dropped,
// missing cells (absent, empty, or listed in missing_values) become "".
// Fails with UnknownSourceColumn or UnparseableTimestamp (row named).
absl::StatusOr<std::string> ImportExternalCsv(std::string_view source_csv,
                                              const ColumnMapping& mapping);

absl::Status ImportExternal(const std::string& source_path,
                            const ColumnMapping& mapping,
                            const std::string& output_path);

}  // namespace attrsel

#endif  // ATTRSEL_IMPORT_H_
