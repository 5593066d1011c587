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

#include "attrsel/import.h"

#include <ctime>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "attrsel/text_formats.h"
#include "string_compat.h"

namespace attrsel {

absl::StatusOr<ColumnMapping> ParseColumnMapping(std::string_view text) {
  auto entries = ParseKeyValueDocument(text);
  if (!entries.ok()) return entries.status();
  ColumnMapping mapping;
  std::set<std::string> canonical_names;
  for (const KeyValueEntry& entry : *entries) {
    if (entry.section == "attributes") {
      if (entry.value.empty()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "MalformedConfig: attribute '", entry.key,
            "' has no canonical name (line ", entry.line, ")"));
      }
      if (!canonical_names.insert(entry.value).second) {
        return absl::InvalidArgumentError(
            absl::StrCat("DuplicateAttributeName: '", entry.value, "'"));
      }
      mapping.attributes.emplace_back(entry.key, entry.value);
    } else if (!entry.section.empty()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "MalformedConfig: unknown section [", entry.section, "]"));
    } else if (entry.key == "browser_id_column") {
      mapping.browser_id_column = entry.value;
    } else if (entry.key == "timestamp_column") {
      mapping.timestamp_column = entry.value;
    } else if (entry.key == "timestamp_format") {
      mapping.timestamp_format = entry.value;
    } else if (entry.key == "missing_values") {
      for (absl::string_view token : absl::StrSplit(entry.value, ',')) {
        mapping.missing_values.emplace_back(absl::StripAsciiWhitespace(token));
      }
    } else {
      return absl::InvalidArgumentError(absl::StrCat(
          "MalformedConfig: unknown key '", entry.key, "' on line ",
          entry.line));
    }
  }
  if (mapping.browser_id_column.empty() || mapping.timestamp_column.empty()) {
    return absl::InvalidArgumentError(
        "MalformedConfig: browser_id_column and timestamp_column are required");
  }
  if (mapping.attributes.empty()) {
    return absl::InvalidArgumentError(
        "MalformedConfig: [attributes] section maps no columns");
  }
  return mapping;
}

absl::StatusOr<ColumnMapping> LoadColumnMapping(const std::string& path) {
  auto text = ReadFileToString(path);
  if (!text.ok()) return text.status();
  return ParseColumnMapping(*text);
}

absl::StatusOr<int64_t> ParseTimestamp(std::string_view text,
                                       std::string_view format) {
  const absl::string_view trimmed = absl::StripAsciiWhitespace(internal::Absl(text));
  if (format == "epoch_ms" || format == "epoch_s") {
    int64_t value = 0;
    if (!absl::SimpleAtoi(trimmed, &value)) {
      return absl::InvalidArgumentError(
          absl::StrCat("not an integer: '", internal::Absl(text), "'"));
    }
    if (format == "epoch_s") {
      if (value > std::numeric_limits<int64_t>::max() / 1000 ||
          value < std::numeric_limits<int64_t>::min() / 1000) {
        return absl::OutOfRangeError("epoch seconds overflow");
      }
      value *= 1000;
    }
    return value;
  }
  std::tm tm = {};
  std::istringstream in{std::string(trimmed)};
  in >> std::get_time(&tm, std::string(format).c_str());
  if (in.fail()) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", internal::Absl(text), "' does not match '",
                     internal::Absl(format), "'"));
  }
  in >> std::ws;
  if (!in.eof()) {
    return absl::InvalidArgumentError(
        absl::StrCat("trailing characters in '", internal::Absl(text), "'"));
  }
  return static_cast<int64_t>(timegm(&tm)) * 1000;
}

absl::StatusOr<std::string> ImportExternalCsv(std::string_view source_csv,
                                              const ColumnMapping& mapping) {
  auto rows = ParseCsv(source_csv);
  if (!rows.ok()) return rows.status();
  if (rows->empty()) {
    return absl::InvalidArgumentError("MalformedHeader: source file is empty");
  }
  const std::vector<std::string>& header = rows->front().fields;
  auto column_of = [&](const std::string& name) -> absl::StatusOr<size_t> {
    for (size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    return absl::InvalidArgumentError(
        absl::StrCat("UnknownSourceColumn: '", name, "'"));
  };
  auto id_column = column_of(mapping.browser_id_column);
  if (!id_column.ok()) return id_column.status();
  auto time_column = column_of(mapping.timestamp_column);
  if (!time_column.ok()) return time_column.status();
  std::vector<size_t> attribute_columns;
  std::vector<std::string> out_header = {"browser_id", "timestamp"};
  for (const auto& [source, canonical] : mapping.attributes) {
    auto column = column_of(source);
    if (!column.ok()) return column.status();
    attribute_columns.push_back(*column);
    out_header.push_back(canonical);
  }
  const std::set<std::string> missing(mapping.missing_values.begin(),
                                      mapping.missing_values.end());
  auto cell = [&](const CsvRow& row, size_t column) -> std::string {
    if (column >= row.fields.size()) return "";
    const std::string& value = row.fields[column];
    return missing.contains(value) ? "" : value;
  };

  std::string out = CsvLine(out_header);
  for (size_t r = 1; r < rows->size(); ++r) {
    const CsvRow& row = (*rows)[r];
    auto timestamp =
        ParseTimestamp(cell(row, *time_column), mapping.timestamp_format);
    if (!timestamp.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "UnparseableTimestamp: row ", r, " (line ", row.line, "): ",
          timestamp.status().message()));
    }
    std::vector<std::string> fields;
    fields.reserve(out_header.size());
    fields.push_back(cell(row, *id_column));
    fields.push_back(absl::StrCat(*timestamp));
    for (size_t column : attribute_columns) fields.push_back(cell(row, column));
    out += CsvLine(fields);
  }
  return out;
}

absl::Status ImportExternal(const std::string& source_path,
                            const ColumnMapping& mapping,
                            const std::string& output_path) {
  auto source = ReadFileToString(source_path);
  if (!source.ok()) return source.status();
  auto canonical = ImportExternalCsv(*source, mapping);
  if (!canonical.ok()) return canonical.status();
  return WriteStringToFile(output_path, *canonical);
}

}  // namespace attrsel
