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
#include <random>

#include "absl/container/flat_hash_set.h"
#include "gtest/gtest.h"

namespace attrsel {
namespace {

TEST(AttributeSetTest, CanonicalFormIgnoresOrderAndDuplicates) {
  EXPECT_EQ(AttributeSet({3, 1, 3, 0}), AttributeSet({0, 1, 3}));
  EXPECT_EQ(AttributeSet({3, 1, 0}).Members(), (std::vector<int>{0, 1, 3}));
  EXPECT_EQ(AttributeSet({2, 0}).DebugString(), "{0,2}");
  EXPECT_EQ(AttributeSet().DebugString(), "{}");
}

TEST(AttributeSetTest, EmptySetHasNoWords) {
  AttributeSet set;
  EXPECT_TRUE(set.empty());
  EXPECT_EQ(set.size(), 0);
  EXPECT_EQ(set.Span(), 0);
  EXPECT_TRUE(set.words().empty());
  EXPECT_EQ(AttributeSet(std::vector<int>{}), set);
}

TEST(AttributeSetTest, MembersBeyondOneWord) {
  AttributeSet set({0, 63, 64, 130});
  EXPECT_EQ(set.size(), 4);
  EXPECT_TRUE(set.Contains(64));
  EXPECT_FALSE(set.Contains(65));
  EXPECT_FALSE(set.Contains(1000));
  EXPECT_EQ(set.Span(), 131);
  EXPECT_EQ(set.words().size(), 3u);
}

TEST(AttributeSetTest, FullAndWith) {
  EXPECT_EQ(AttributeSet::Full(3), AttributeSet({0, 1, 2}));
  EXPECT_TRUE(AttributeSet::Full(0).empty());
  EXPECT_EQ(AttributeSet({1}).With(0), AttributeSet({0, 1}));
  EXPECT_EQ(AttributeSet({1}).With(1), AttributeSet({1}));
}

TEST(AttributeSetTest, SubsetRelations) {
  const AttributeSet a({1, 3});
  const AttributeSet b({0, 1, 3});
  EXPECT_TRUE(a.IsSubsetOf(b));
  EXPECT_TRUE(a.IsProperSubsetOf(b));
  EXPECT_FALSE(b.IsSubsetOf(a));
  EXPECT_TRUE(a.IsSubsetOf(a));
  EXPECT_FALSE(a.IsProperSubsetOf(a));
  EXPECT_TRUE(AttributeSet().IsSubsetOf(a));
  EXPECT_TRUE(AttributeSet({70}).IsSubsetOf(AttributeSet({1, 70})));
  EXPECT_FALSE(AttributeSet({70}).IsSubsetOf(AttributeSet({1})));
}

TEST(AttributeSetTest, OrderIsSizeThenLexicographic) {
  std::vector<AttributeSet> sets = {{0, 2}, {3}, {}, {0, 1}, {1, 2}, {0}};
  std::sort(sets.begin(), sets.end());
  const std::vector<AttributeSet> expected = {{}, {0}, {3}, {0, 1}, {0, 2},
                                              {1, 2}};
  EXPECT_EQ(sets, expected);
}

TEST(AttributeSetTest, HashAgreesWithEquality) {
  absl::flat_hash_set<AttributeSet> seen;
  seen.insert(AttributeSet({2, 0}));
  EXPECT_TRUE(seen.contains(AttributeSet({0, 2})));
  EXPECT_FALSE(seen.contains(AttributeSet({0})));
  // Growing then shrinking never leaves trailing zero words behind.
  EXPECT_TRUE(seen.insert(AttributeSet({})).second);
  EXPECT_FALSE(seen.insert(AttributeSet(std::vector<int>{})).second);
}

TEST(AttributeSetPropertyTest, MembersRoundTripAndOrderIsTotal) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<int> x, y;
    for (int i = 0; i < 140; ++i) {
      if (rng() % 9 == 0) x.push_back(i);
      if (rng() % 9 == 0) y.push_back(i);
    }
    const AttributeSet a(x), b(y);
    EXPECT_EQ(a.Members(), x);
    EXPECT_EQ(a.size(), static_cast<int>(x.size()));
    const bool lt = a < b, gt = b < a, eq = a == b;
    EXPECT_EQ(lt + gt + eq, 1);
    if (a.size() != b.size()) EXPECT_EQ(lt, a.size() < b.size());
    const bool subset = std::includes(y.begin(), y.end(), x.begin(), x.end());
    EXPECT_EQ(a.IsSubsetOf(b), subset);
  }
}

}  // namespace
}  // namespace attrsel
