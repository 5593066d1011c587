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

#ifndef ATTRSEL_ATTRIBUTE_SET_H_
#define ATTRSEL_ATTRIBUTE_SET_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace attrsel {

// A subset of the candidate attributes, stored as a bit pattern over
// attribute indices. Trailing zero words are trimmed, so two sets holding the
// same members compare equal regardless of how they were built.
//
// The canonical order used for every tie-break in the library is: smaller
// sets first, then lexicographic order of the ascending member lists.
class AttributeSet {
 public:
  AttributeSet() = default;
  AttributeSet(std::initializer_list<int> members);
  explicit AttributeSet(const std::vector<int>& members);

  // All indices 0..n-1.
  static AttributeSet Full(int n);

  bool empty() const { return words_.empty(); }
  int size() const;
  bool Contains(int index) const;

  // Returns a copy with |index| added.
  AttributeSet With(int index) const;

  bool IsSubsetOf(const AttributeSet& other) const;
  bool IsProperSubsetOf(const AttributeSet& other) const {
    return IsSubsetOf(other) && !(*this == other);
  }

  // Ascending member indices.
  std::vector<int> Members() const;

  // Largest member plus one; 0 for the empty set.
  int Span() const;

  const std::vector<uint64_t>& words() const { return words_; }

  // "{0,2,3}".
  std::string DebugString() const;

  bool operator==(const AttributeSet& other) const = default;
  std::strong_ordering operator<=>(const AttributeSet& other) const;

  template <typename H>
  friend H AbslHashValue(H h, const AttributeSet& set) {
    return H::combine(std::move(h), set.words_);
  }

 private:
  void Trim();

  std::vector<uint64_t> words_;
};

}  // namespace attrsel

#endif  // ATTRSEL_ATTRIBUTE_SET_H_
