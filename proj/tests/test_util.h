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

#ifndef ATTRSEL_TESTS_TEST_UTIL_H_
#define ATTRSEL_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "attrsel/config.h"
#include "attrsel/dataset.h"

#ifndef ATTRSEL_SOURCE_DIR
#error "ATTRSEL_SOURCE_DIR must point at the repository root"
#endif

namespace attrsel::testing {

inline constexpr char kTable1Csv[] =
    "browser_id,timestamp,CookieEnabled,Language,Timezone,Screen\n"
    "u1,1,True,fr,-1,1080\n"
    "u2,2,True,en,-1,1920\n"
    "u3,3,True,it,1,1080\n"
    "u4,4,True,sp,0,1920\n"
    "u5,5,True,en,-1,1080\n"
    "u6,6,True,fr,-1,1920\n";

// Attribute indices in the six-browser toy dataset.
inline constexpr int kCookie = 0;
inline constexpr int kLanguage = 1;
inline constexpr int kTimezone = 2;
inline constexpr int kScreen = 3;

inline Dataset Table1() { return ParseCanonicalCsv(kTable1Csv).value(); }

inline std::string SourcePath(const std::string& relative) {
  return (std::filesystem::path(ATTRSEL_SOURCE_DIR) / relative).string();
}

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng(std::random_device{}());
    path_ = std::filesystem::temp_directory_path() /
            absl::StrCat("attrsel-test-", rng());
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string File(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

struct RandomDatasetOptions {
  int min_attributes = 1;
  int max_attributes = 6;
  int max_browsers = 64;
  int max_records_per_browser = 3;
  int max_alphabet = 5;
};

// Small categorical datasets with uneven value lengths, duplicated (hence
// correlated) columns, empty values, timestamp ties and value drift between a
// browser's records.
inline Dataset RandomDataset(std::mt19937_64& rng,
                             const RandomDatasetOptions& options = {}) {
  auto uniform = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  const int n = uniform(options.min_attributes, options.max_attributes);
  const int browsers = uniform(1, options.max_browsers);
  std::vector<Attribute> attributes;
  std::vector<int> alphabet(n);
  std::vector<int> copy_of(n, -1);
  for (int a = 0; a < n; ++a) {
    attributes.push_back({a, absl::StrCat("attr", a), std::nullopt});
    if (uniform(0, 3) == 0) {
      attributes.back().avg_collection_time_ms = uniform(0, 50) / 2.0;
    }
    alphabet[a] = uniform(1, options.max_alphabet);
    if (a > 0 && uniform(0, 5) == 0) copy_of[a] = uniform(0, a - 1);
  }
  auto value = [&](int a) -> std::string {
    const int v = uniform(0, alphabet[a] - 1);
    if (v == 0 && uniform(0, 4) == 0) return "";
    return std::string(1 + (v * 7 + a) % 4, static_cast<char>('a' + v));
  };
  std::vector<FingerprintRecord> records;
  for (int b = 0; b < browsers; ++b) {
    std::vector<std::string> values(n);
    for (int a = 0; a < n; ++a) {
      values[a] = copy_of[a] >= 0 ? values[copy_of[a]] : value(a);
    }
    const int count = uniform(1, options.max_records_per_browser);
    for (int r = 0; r < count; ++r) {
      if (r > 0) {
        for (int a = 0; a < n; ++a) {
          if (copy_of[a] < 0 && uniform(0, 3) == 0) values[a] = value(a);
        }
        for (int a = 0; a < n; ++a) {
          if (copy_of[a] >= 0) values[a] = values[copy_of[a]];
        }
      }
      records.push_back({absl::StrCat("b", b), uniform(0, 20), values});
    }
  }
  std::shuffle(records.begin(), records.end(), rng);
  return Dataset::Create(std::move(attributes), std::move(records)).value();
}

// A random valid configuration for |n| attributes.
inline ExplorationConfig RandomConfig(std::mt19937_64& rng, int n) {
  const double alphas[] = {0.1, 0.2, 0.4};
  const int budgets[] = {1, 2, 4};
  ExplorationConfig config;
  config.threshold_alpha = alphas[rng() % 3];
  config.submission_budget = budgets[rng() % 3];
  config.beam_width = 1 + static_cast<int>(rng() % n);
  config.weights.size = static_cast<double>(rng() % 3);
  config.weights.instability = static_cast<double>(rng() % 3);
  config.weights.time = static_cast<double>(rng() % 2);
  config.weights.epsilon = 0.01;
  return config;
}

}  // namespace attrsel::testing

#endif  // ATTRSEL_TESTS_TEST_UTIL_H_
