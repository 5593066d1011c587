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

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace attrsel {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

TEST(ParseCsvTest, QuotedFieldsAndLineNumbers) {
  auto rows = ParseCsv("a,b\n\"x,1\",\"say \"\"hi\"\"\"\n\n\"multi\nline\",z\r\n");
  ASSERT_TRUE(rows.ok()) << rows.status();
  ASSERT_EQ(rows->size(), 3u);
  EXPECT_EQ((*rows)[0].line, 1);
  EXPECT_THAT((*rows)[1].fields, ElementsAre("x,1", "say \"hi\""));
  EXPECT_EQ((*rows)[1].line, 2);
  EXPECT_THAT((*rows)[2].fields, ElementsAre("multi\nline", "z"));
  EXPECT_EQ((*rows)[2].line, 4);
}

TEST(ParseCsvTest, EmptyFieldsAreKept) {
  auto rows = ParseCsv(",\n\"\",x,\n");
  ASSERT_TRUE(rows.ok());
  EXPECT_THAT((*rows)[0].fields, ElementsAre("", ""));
  EXPECT_THAT((*rows)[1].fields, ElementsAre("", "x", ""));
}

TEST(ParseCsvTest, RejectsUnterminatedQuote) {
  auto rows = ParseCsv("a,b\n\"open,x\n");
  ASSERT_FALSE(rows.ok());
  EXPECT_THAT(rows.status().message(), HasSubstr("MalformedCsv"));
}

TEST(ParseCsvTest, RejectsTextAfterClosingQuote) {
  EXPECT_FALSE(ParseCsv("\"a\"b,c\n").ok());
}

TEST(CsvEscapeTest, QuotesOnlyWhenNeeded) {
  EXPECT_EQ(CsvEscape("plain"), "plain");
  EXPECT_EQ(CsvEscape("a,b"), "\"a,b\"");
  EXPECT_EQ(CsvEscape("q\"q"), "\"q\"\"q\"");
  EXPECT_EQ(CsvEscape("two\nlines"), "\"two\nlines\"");
  EXPECT_EQ(CsvLine({"a", "", "b,c"}), "a,,\"b,c\"\n");
}

TEST(CsvRoundTripTest, EscapedLinesParseBack) {
  const std::vector<std::string> fields = {"", "x", "a,b", "\"", "l1\r\nl2",
                                           " pad "};
  auto rows = ParseCsv(CsvLine(fields));
  ASSERT_TRUE(rows.ok());
  ASSERT_EQ(rows->size(), 1u);
  EXPECT_EQ((*rows)[0].fields, fields);
}

TEST(KeyValueDocumentTest, SectionsCommentsAndQuotes) {
  auto entries = ParseKeyValueDocument(
      "# comment\n"
      "top = 1\n"
      "; other comment\n"
      "[attributes]\n"
      "  user_agent =  User-Agent  \n"
      "\"a=b\" = \" spaced \"\n");
  ASSERT_TRUE(entries.ok()) << entries.status();
  ASSERT_EQ(entries->size(), 3u);
  EXPECT_EQ((*entries)[0].section, "");
  EXPECT_EQ((*entries)[0].key, "top");
  EXPECT_EQ((*entries)[0].line, 2);
  EXPECT_EQ((*entries)[1].section, "attributes");
  EXPECT_EQ((*entries)[1].value, "User-Agent");
  EXPECT_EQ((*entries)[2].key, "a=b");
  EXPECT_EQ((*entries)[2].value, " spaced ");
}

TEST(KeyValueDocumentTest, MissingSeparatorNamesLine) {
  auto entries = ParseKeyValueDocument("a = 1\nbroken\n");
  ASSERT_FALSE(entries.ok());
  EXPECT_THAT(entries.status().message(), HasSubstr("line 2"));
}

TEST(FileIoTest, MissingFileIsAnError) {
  EXPECT_FALSE(ReadFileToString("/nonexistent/attrsel/file").ok());
}

}  // namespace
}  // namespace attrsel
