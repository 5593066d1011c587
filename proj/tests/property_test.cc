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

#include <random>

#include "absl/strings/str_join.h"
#include "attrsel/baselines.h"
#include "attrsel/explorer.h"
#include "gtest/gtest.h"
#include "oracle.h"
#include "properties.h"
#include "test_util.h"

namespace attrsel {
namespace {

using testing::kTolerance;
using testing::RandomConfig;
using testing::RandomDataset;
using testing::RandomSubset;

std::string Describe(const testing::Violations& violations) {
  return absl::StrJoin(violations, "\n");
}

TEST(PropertyTest, SupersetsAreNoMoreSensitiveAndStrictlyCostlier) {
  std::mt19937_64 rng(101);
  const auto violations = testing::CheckMonotonicity(rng, 300);
  EXPECT_TRUE(violations.empty()) << Describe(violations);
}

TEST(PropertyTest, AddingAnAttributeRefinesThePartition) {
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < 200; ++trial) {
    const Dataset dataset = RandomDataset(rng);
    MeasureEngine engine(dataset);
    const int n = dataset.num_attributes();
    const AttributeSet s = RandomSubset(rng, n);
    const int a = static_cast<int>(rng() % n);
    const auto coarse = oracle::ClassSizes(dataset, s.Members());
    const auto fine = oracle::ClassSizes(dataset, s.With(a).Members());
    EXPECT_GE(fine.size(), coarse.size());
    // The largest class can only shrink.
    EXPECT_LE(fine.front(), coarse.front());
    EXPECT_LE(engine.Unicity(s), engine.Unicity(s.With(a)) + kTolerance);
  }
}

TEST(PropertyTest, SensitivityGrowsWithBudget) {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 200; ++trial) {
    const Dataset dataset = RandomDataset(rng);
    MeasureEngine engine(dataset);
    const AttributeSet s = RandomSubset(rng, dataset.num_attributes());
    double previous = 0.0;
    for (int budget = 1; budget <= 6; ++budget) {
      const double sens = engine.Sensitivity(s, {budget});
      EXPECT_GE(sens, previous - kTolerance);
      EXPECT_LE(sens, 1.0);
      previous = sens;
    }
  }
}

TEST(PropertyTest, ConditionalGainIsEntropyDifferenceAndNonNegative) {
  std::mt19937_64 rng(104);
  for (int trial = 0; trial < 200; ++trial) {
    const Dataset dataset = RandomDataset(rng);
    MeasureEngine engine(dataset);
    const int n = dataset.num_attributes();
    const AttributeSet base = RandomSubset(rng, n);
    for (int a = 0; a < n; ++a) {
      auto gain = engine.ConditionalEntropyGain(base, a);
      if (base.Contains(a)) {
        EXPECT_FALSE(gain.ok());
        continue;
      }
      ASSERT_TRUE(gain.ok());
      EXPECT_GE(*gain, -kTolerance);
      EXPECT_NEAR(*gain,
                  engine.EntropyBits(base.With(a)) - engine.EntropyBits(base),
                  kTolerance);
    }
  }
}

TEST(PropertyTest, LowerBoundNeverExceedsCost) {
  std::mt19937_64 rng(105);
  for (int trial = 0; trial < 200; ++trial) {
    const Dataset dataset = RandomDataset(rng);
    MeasureEngine engine(dataset);
    const ExplorationConfig config =
        RandomConfig(rng, dataset.num_attributes());
    const AttributeSet s = RandomSubset(rng, dataset.num_attributes());
    EXPECT_LE(engine.CostLowerBound(s, config.weights),
              engine.UsabilityCost(s, config.weights) + kTolerance);
  }
}

TEST(PropertyTest, FpSelectAgreesWithOracle) {
  std::mt19937_64 rng(106);
  testing::OracleSuiteStats stats;
  testing::Violations bound;
  const auto violations =
      testing::CheckOracleEquivalence(rng, 100, &stats, &bound);
  EXPECT_TRUE(violations.empty()) << Describe(violations);
  EXPECT_TRUE(bound.empty()) << Describe(bound);
}

TEST(PropertyTest, BruteForceMatchesOracle) {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 100; ++trial) {
    const Dataset dataset = RandomDataset(rng);
    MeasureEngine engine(dataset);
    const ExplorationConfig config =
        RandomConfig(rng, dataset.num_attributes());
    const SelectionResult result = BruteForceFrontier(engine, config).value();
    const auto optimum = oracle::CheapestSatisfying(
        dataset, config.threshold_alpha, config.submission_budget,
        config.weights);
    ASSERT_EQ(result.best.has_value(), optimum.has_value());
    if (optimum) {
      EXPECT_NEAR(result.best->cost, optimum->cost, kTolerance);
    }
    EXPECT_EQ(result.explored_count, 1 << dataset.num_attributes());
  }
}

TEST(PropertyTest, PruningNeverLosesTheBest) {
  std::mt19937_64 rng(108);
  const auto violations = testing::CheckPruneSafety(rng, 200);
  EXPECT_TRUE(violations.empty()) << Describe(violations);
}

TEST(PropertyTest, TracesAreDeterministicAndSummarizeFaithfully) {
  std::mt19937_64 rng(109);
  const auto violations = testing::CheckTraceFidelity(rng, 60);
  EXPECT_TRUE(violations.empty()) << Describe(violations);
}

TEST(PropertyTest, WiderBeamsEvaluateMoreButStayBounded) {
  std::mt19937_64 rng(110);
  for (int trial = 0; trial < 100; ++trial) {
    const Dataset dataset = RandomDataset(rng);
    MeasureEngine engine(dataset);
    const int n = dataset.num_attributes();
    ExplorationConfig config = RandomConfig(rng, n);
    for (int beam = 1; beam <= n + 2; ++beam) {
      config.beam_width = beam;
      config.pruning = rng() % 2;
      NullTraceSink sink;
      const SelectionResult result = FpSelect(engine, config, sink).value();
      EXPECT_LE(result.explored_count, beam * n * (n + 1) / 2 + 1);
      EXPECT_LE(result.steps, n);
      for (const NodeEvaluation& node : result.frontier) {
        EXPECT_TRUE(node.satisfying);
        if (result.best) {
          EXPECT_GE(node.cost, result.best->cost - kTolerance);
        }
      }
    }
  }
}

}  // namespace
}  // namespace attrsel
