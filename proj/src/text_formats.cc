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

#include "attrsel/text_formats.h"

#include <fstream>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "string_compat.h"

namespace attrsel {

absl::StatusOr<std::vector<CsvRow>> ParseCsv(std::string_view text) {
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  bool row_has_content = false;
  int line = 1;
  row.line = 1;

  auto end_field = [&] {
    row.fields.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_row = [&] {
    if (row_has_content || !field.empty() || field_was_quoted ||
        !row.fields.empty()) {
      end_field();
      rows.push_back(std::move(row));
    }
    row = CsvRow{};
    row_has_content = false;
  };

  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) {
          return absl::InvalidArgumentError(
              absl::StrCat("MalformedCsv: stray quote on line ", line));
        }
        in_quotes = true;
        field_was_quoted = true;
        row_has_content = true;
        break;
      case ',':
        end_field();
        row_has_content = true;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        [[fallthrough]];
      case '\n':
        end_row();
        ++line;
        row.line = line;
        break;
      default:
        if (field_was_quoted) {
          return absl::InvalidArgumentError(absl::StrCat(
              "MalformedCsv: text after closing quote on line ", line));
        }
        field.push_back(c);
        row_has_content = true;
    }
  }
  if (in_quotes) {
    return absl::InvalidArgumentError(absl::StrCat(
        "MalformedCsv: unterminated quoted field starting on line ", row.line));
  }
  end_row();
  return rows;
}

std::string CsvEscape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string CsvLine(const std::vector<std::string>& fields) {
  std::string out;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += CsvEscape(fields[i]);
  }
  out.push_back('\n');
  return out;
}

namespace {

std::string_view Unquote(std::string_view s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

// Finds the separating '=' while skipping over a quoted key.
size_t FindSeparator(std::string_view s) {
  if (!s.empty() && s.front() == '"') {
    const size_t close = s.find('"', 1);
    if (close == std::string_view::npos) return std::string_view::npos;
    return s.find('=', close);
  }
  return s.find('=');
}

}  // namespace

absl::StatusOr<std::vector<KeyValueEntry>> ParseKeyValueDocument(
    std::string_view text) {
  std::vector<KeyValueEntry> entries;
  std::string section;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    line = internal::StripWhitespace(line);
    if (line.empty() || line.front() == '#' || line.front() == ';') {
      if (eol == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        return absl::InvalidArgumentError(
            absl::StrCat("MalformedConfig: bad section header on line ",
                         line_no));
      }
      section = std::string(
          internal::StripWhitespace(line.substr(1, line.size() - 2)));
      continue;
    }
    const size_t eq = FindSeparator(line);
    if (eq == std::string_view::npos) {
      return absl::InvalidArgumentError(absl::StrCat(
          "MalformedConfig: expected 'key = value' on line ", line_no));
    }
    std::string_view key = internal::StripWhitespace(line.substr(0, eq));
    std::string_view value = internal::StripWhitespace(line.substr(eq + 1));
    key = Unquote(key);
    if (key.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("MalformedConfig: empty key on line ", line_no));
    }
    entries.push_back(KeyValueEntry{section, std::string(key),
                                    std::string(Unquote(value)), line_no});
    if (eol == text.size()) break;
  }
  return entries;
}

absl::StatusOr<std::string> ReadFileToString(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot open '", path, "'"));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    return absl::DataLossError(absl::StrCat("IoFailure: reading '", path, "'"));
  }
  return buffer.str();
}

absl::Status WriteStringToFile(const std::string& path,
                               std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::UnavailableError(
        absl::StrCat("IoFailure: cannot open '", path, "' for writing"));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) {
    return absl::DataLossError(
        absl::StrCat("IoFailure: writing '", path, "'"));
  }
  return absl::OkStatus();
}

}  // namespace attrsel
