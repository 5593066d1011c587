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

// Small text formats shared by the dataset loader and the importer: RFC-4180
// CSV and a line-oriented "key = value" document with optional [sections].

#ifndef ATTRSEL_TEXT_FORMATS_H_
#define ATTRSEL_TEXT_FORMATS_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace attrsel {

struct CsvRow {
  int line = 0;  // 1-based line on which the row starts.
  std::vector<std::string> fields;
};

// Parses RFC-4180 CSV. Quoted fields may contain commas, doubled quotes and
// line breaks; CRLF and LF line endings are both accepted. Blank lines are
// skipped.
absl::StatusOr<std::vector<CsvRow>> ParseCsv(std::string_view text);

// Quotes |field| only when it contains a comma, a quote or a line break.
std::string CsvEscape(std::string_view field);

// Joins escaped fields with commas and appends "\n".
std::string CsvLine(const std::vector<std::string>& fields);

struct KeyValueEntry {
  std::string section;  // Empty before the first [section] header.
  std::string key;
  std::string value;
  int line = 0;
};

// Parses "key = value" lines. '#' and ';' start comment lines, "[name]" opens
// a section. Keys and values are trimmed; either may be wrapped in double
// quotes to keep surrounding spaces or an '=' inside a key.
absl::StatusOr<std::vector<KeyValueEntry>> ParseKeyValueDocument(
    std::string_view text);

absl::StatusOr<std::string> ReadFileToString(const std::string& path);
absl::Status WriteStringToFile(const std::string& path,
                               std::string_view contents);

}  // namespace attrsel

#endif  // ATTRSEL_TEXT_FORMATS_H_
