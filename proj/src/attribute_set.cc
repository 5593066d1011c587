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

#include "attrsel/attribute_set.h"

#include <algorithm>
#include <bit>

#include "absl/strings/str_join.h"

namespace attrsel {

namespace {
constexpr int kWordBits = 64;
}  // namespace

AttributeSet::AttributeSet(std::initializer_list<int> members)
    : AttributeSet(std::vector<int>(members)) {}

AttributeSet::AttributeSet(const std::vector<int>& members) {
  for (int index : members) {
    const size_t word = static_cast<size_t>(index) / kWordBits;
    if (words_.size() <= word) words_.resize(word + 1, 0);
    words_[word] |= uint64_t{1} << (index % kWordBits);
  }
  Trim();
}

AttributeSet AttributeSet::Full(int n) {
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  return AttributeSet(all);
}

int AttributeSet::size() const {
  int count = 0;
  for (uint64_t w : words_) count += std::popcount(w);
  return count;
}

bool AttributeSet::Contains(int index) const {
  if (index < 0) return false;
  const size_t word = static_cast<size_t>(index) / kWordBits;
  if (word >= words_.size()) return false;
  return (words_[word] >> (index % kWordBits)) & 1;
}

AttributeSet AttributeSet::With(int index) const {
  AttributeSet copy = *this;
  const size_t word = static_cast<size_t>(index) / kWordBits;
  if (copy.words_.size() <= word) copy.words_.resize(word + 1, 0);
  copy.words_[word] |= uint64_t{1} << (index % kWordBits);
  return copy;
}

bool AttributeSet::IsSubsetOf(const AttributeSet& other) const {
  if (words_.size() > other.words_.size()) return false;
  for (size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

std::vector<int> AttributeSet::Members() const {
  std::vector<int> members;
  for (size_t i = 0; i < words_.size(); ++i) {
    uint64_t w = words_[i];
    while (w != 0) {
      const int bit = std::countr_zero(w);
      members.push_back(static_cast<int>(i) * kWordBits + bit);
      w &= w - 1;
    }
  }
  return members;
}

int AttributeSet::Span() const {
  if (words_.empty()) return 0;
  const uint64_t top = words_.back();
  return static_cast<int>(words_.size() - 1) * kWordBits +
         (kWordBits - std::countl_zero(top));
}

std::string AttributeSet::DebugString() const {
  return "{" + absl::StrJoin(Members(), ",") + "}";
}

std::strong_ordering AttributeSet::operator<=>(
    const AttributeSet& other) const {
  if (auto c = size() <=> other.size(); c != 0) return c;
  const std::vector<int> a = Members();
  const std::vector<int> b = other.Members();
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(),
                                                b.end());
}

void AttributeSet::Trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

}  // namespace attrsel
