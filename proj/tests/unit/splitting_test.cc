/*
 * Copyright 2026 The icboost Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "icboost/splitting.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "icboost/errors.hpp"
#include "oracles.hpp"

namespace icboost {
namespace {

std::vector<RowIndex> AllRows(std::size_t n) {
  std::vector<RowIndex> rows(n);
  std::iota(rows.begin(), rows.end(), RowIndex{0});
  return rows;
}

TEST(NodeLoss, KnownValues) {
  EXPECT_DOUBLE_EQ(NodeLoss({0.0, 5.0, 10, 10}), 0.0);
  EXPECT_DOUBLE_EQ(NodeLoss({2.0, 4.0, 10, 10}), -0.05);
  EXPECT_DOUBLE_EQ(NodeLoss({-3.0, 1.5, 100, 100}), -0.03);
  EXPECT_THROW(NodeLoss({1.0, 0.0, 1, 1}), Error);
}

TEST(LeafWeight, KnownValues) {
  EXPECT_DOUBLE_EQ(LeafWeight({2.0, 4.0, 2, 2}), -0.5);
  EXPECT_DOUBLE_EQ(LeafWeight({0.0, 1.0, 1, 1}), 0.0);
  // mse residuals r = [1, 3] give g = -r, h = 1.
  EXPECT_DOUBLE_EQ(LeafWeight({-4.0, 2.0, 2, 2}), 2.0);
  try {
    LeafWeight({1.0, -1.0, 1, 1});
    FAIL() << "expected a convexity error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kConvexity);
  }
}

TEST(BestSplit, TwoPointExample) {
  const auto x = FeatureMatrix::FromColumns({{1.0, 2.0}});
  const std::vector<double> g{0.0, -10.0};
  const std::vector<double> h{1.0, 1.0};
  const auto rows = AllRows(2);
  const auto split = BestSplit(x, rows, g, h, 2);
  ASSERT_TRUE(split.has_value());
  EXPECT_EQ(split->feature, 0u);
  EXPECT_DOUBLE_EQ(split->threshold, 1.5);
  EXPECT_DOUBLE_EQ(split->reduction, 12.5);
  EXPECT_EQ(split->left.n_node + split->right.n_node, 2u);
  ASSERT_EQ(split->split_quantiles.size(), 1u);
  ASSERT_EQ(split->split_quantiles[0].ranks.size(), 1u);
  EXPECT_DOUBLE_EQ(split->split_quantiles[0].u(0), 0.5);
}

TEST(BestSplit, NoCandidateWithConstantFeatures) {
  const auto x = FeatureMatrix::FromColumns({{2.0, 2.0, 2.0}, {-1.0, -1.0, -1.0}});
  const std::vector<double> g{1.0, -2.0, 0.5};
  const std::vector<double> h{1.0, 1.0, 1.0};
  const auto rows = AllRows(3);
  EXPECT_FALSE(BestSplit(x, rows, g, h, 3).has_value());
}

TEST(BestSplit, DuplicatesShareOneCandidate) {
  const auto x = FeatureMatrix::FromColumns({{1.0, 1.0, 2.0, 2.0, 2.0, 3.0}});
  const std::vector<double> g{1.0, 2.0, -1.0, -1.0, 0.5, 3.0};
  const std::vector<double> h(6, 1.0);
  const auto rows = AllRows(6);
  const auto split = BestSplit(x, rows, g, h, 6);
  ASSERT_TRUE(split.has_value());
  const auto& q = split->split_quantiles[0];
  ASSERT_EQ(q.ranks.size(), 2u);
  EXPECT_EQ(q.ranks[0], 2u);
  EXPECT_EQ(q.ranks[1], 5u);
}

TEST(BestSplit, TiesGoToLowerFeatureThenLowerThreshold) {
  // Two identical features and a symmetric response: every choice ties.
  const std::vector<double> column{1.0, 2.0, 3.0, 4.0};
  const auto x = FeatureMatrix::FromColumns({column, column});
  const std::vector<double> g{1.0, -1.0, 1.0, -1.0};
  const std::vector<double> h(4, 1.0);
  const auto rows = AllRows(4);
  const auto split = BestSplit(x, rows, g, h, 4);
  ASSERT_TRUE(split.has_value());
  EXPECT_EQ(split->feature, 0u);
  EXPECT_DOUBLE_EQ(split->threshold, 1.5);
}

// Dyadic gradients and integer-grid features keep every sum exact, so the
// scan and the exhaustive oracle must agree bit for bit.
TEST(BestSplit, MatchesExhaustiveOracleExactly) {
  std::mt19937_64 rng(2024);
  for (int instance = 0; instance < 200; ++instance) {
    const std::size_t n = 2 + rng() % 199;
    const std::size_t m = 1 + rng() % 5;
    const int levels = 2 + static_cast<int>(rng() % 40);
    std::vector<std::vector<double>> columns(m, std::vector<double>(n));
    for (auto& column : columns) {
      for (double& v : column) v = static_cast<double>(static_cast<int>(rng() % levels)) / 4.0;
    }
    std::vector<double> g(n);
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = static_cast<double>(static_cast<int>(rng() % 129) - 64) / 8.0;
      h[i] = static_cast<double>(1 + rng() % 32) / 8.0;
    }
    const auto x = FeatureMatrix::FromColumns(columns);
    const auto rows = AllRows(n);
    const std::size_t n_total = n + rng() % 100;
    const auto split = BestSplit(x, rows, g, h, n_total);
    const auto expected = oracle::ExhaustiveSplit(columns, g, h, n_total);
    ASSERT_EQ(split.has_value(), expected.has_value());
    if (!split) continue;
    EXPECT_EQ(split->feature, expected->feature) << "instance " << instance;
    EXPECT_EQ(split->threshold, expected->threshold) << "instance " << instance;
    EXPECT_EQ(split->reduction, expected->reduction) << "instance " << instance;
  }
}

TEST(BestSplit, MatchesExhaustiveOracleOnContinuousData) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  for (int instance = 0; instance < 50; ++instance) {
    const std::size_t n = 200;
    const std::size_t m = 5;
    std::vector<std::vector<double>> columns(m, std::vector<double>(n));
    for (auto& column : columns) {
      for (double& v : column) v = normal(rng);
    }
    std::vector<double> g(n);
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = normal(rng) + columns[instance % m][i];
      h[i] = 0.1 + std::abs(normal(rng));
    }
    const auto x = FeatureMatrix::FromColumns(columns);
    const auto rows = AllRows(n);
    const auto split = BestSplit(x, rows, g, h, n);
    const auto expected = oracle::ExhaustiveSplit(columns, g, h, n);
    ASSERT_TRUE(split && expected);
    EXPECT_EQ(split->feature, expected->feature);
    EXPECT_EQ(split->threshold, expected->threshold);
    EXPECT_NEAR(split->reduction, expected->reduction, 1e-9 * expected->reduction);
  }
}

TEST(BestSplit, ReductionRecomputedFromPartitions) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal;
  const std::size_t n = 500;
  std::vector<std::vector<double>> columns(3, std::vector<double>(n));
  for (auto& column : columns) {
    for (double& v : column) v = normal(rng);
  }
  std::vector<double> g(n);
  std::vector<double> h(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) g[i] = normal(rng) - (columns[1][i] > 0.3 ? 1.0 : 0.0);
  const auto x = FeatureMatrix::FromColumns(columns);
  const auto rows = AllRows(n);
  const auto split = BestSplit(x, rows, g, h, n);
  ASSERT_TRUE(split.has_value());
  EXPECT_GE(split->reduction, 0.0);
  std::vector<RowIndex> left;
  std::vector<RowIndex> right;
  for (RowIndex i = 0; i < n; ++i) {
    (x.at(i, split->feature) <= split->threshold ? left : right).push_back(i);
  }
  const NodeStats parent = ComputeNodeStats(g, h, rows, n);
  const NodeStats l = ComputeNodeStats(g, h, left, n);
  const NodeStats r = ComputeNodeStats(g, h, right, n);
  EXPECT_EQ(l.n_node, split->left.n_node);
  const double recomputed = NodeLoss(parent) - NodeLoss(l) - NodeLoss(r);
  EXPECT_NEAR(split->reduction, recomputed, 1e-9 * recomputed);
}

TEST(BestSplit, InvariantToRowPermutation) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal;
  const std::size_t n = 300;
  std::vector<std::vector<double>> columns(4, std::vector<double>(n));
  for (auto& column : columns) {
    for (double& v : column) v = std::round(normal(rng) * 4.0) / 4.0;
  }
  std::vector<double> g(n);
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = std::round(normal(rng) * 8.0) / 8.0;
    h[i] = 1.0;
  }
  const auto x = FeatureMatrix::FromColumns(columns);
  auto rows = AllRows(n);
  const auto reference = BestSplit(x, rows, g, h, n);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(rows.begin(), rows.end(), rng);
    const auto split = BestSplit(x, rows, g, h, n);
    ASSERT_TRUE(split && reference);
    EXPECT_EQ(split->feature, reference->feature);
    EXPECT_EQ(split->threshold, reference->threshold);
    EXPECT_EQ(split->reduction, reference->reduction);
  }
}

TEST(BestSplit, FeatureOrderDoesNotMatterExceptForTies) {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> normal;
  const std::size_t n = 200;
  std::vector<std::vector<double>> columns(3, std::vector<double>(n));
  for (auto& column : columns) {
    for (double& v : column) v = normal(rng);
  }
  std::vector<double> g(n);
  std::vector<double> h(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) g[i] = normal(rng) + columns[2][i];
  const auto rows = AllRows(n);
  const auto split = BestSplit(FeatureMatrix::FromColumns(columns), rows, g, h, n);
  std::vector<std::vector<double>> reversed(columns.rbegin(), columns.rend());
  const auto split_rev = BestSplit(FeatureMatrix::FromColumns(reversed), rows, g, h, n);
  ASSERT_TRUE(split && split_rev);
  EXPECT_EQ(split->feature, 2u - split_rev->feature);
  EXPECT_EQ(split->threshold, split_rev->threshold);
  EXPECT_EQ(split->reduction, split_rev->reduction);
}

}  // namespace
}  // namespace icboost
