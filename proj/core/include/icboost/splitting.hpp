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

// Exact greedy split profiling. A node is scanned feature by feature with the
// node's rows sorted by feature value; prefix sums of (g, h) give every
// candidate's training-loss reduction in one pass.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "icboost/dataset.hpp"

namespace icboost {

using RowIndex = std::uint32_t;

// Gradient statistics of the training rows routed to one node.
struct NodeStats {
  double grad_sum = 0.0;
  double hess_sum = 0.0;
  std::size_t n_node = 0;
  std::size_t n_total = 0;

  // Fraction of the training data passed to the node.
  double pi() const {
    return static_cast<double>(n_node) / static_cast<double>(n_total);
  }
};

NodeStats ComputeNodeStats(std::span<const double> g, std::span<const double> h,
                           std::span<const RowIndex> rows, std::size_t n_total);

// -G^2 / (2 n_total H): the node's training loss up to constants.
double NodeLoss(const NodeStats& stats);

// -G / H.
double LeafWeight(const NodeStats& stats);

// Candidate split positions of one feature inside a node. Candidate k sends
// ranks[k] of the node's n_node rows left, so u_k = ranks[k] / n_node.
struct SplitQuantiles {
  std::uint32_t n_node = 0;
  std::vector<std::uint32_t> ranks;

  bool empty() const { return ranks.empty(); }
  double u(std::size_t k) const {
    return static_cast<double>(ranks[k]) / static_cast<double>(n_node);
  }
};

struct SplitDecision {
  std::size_t feature = 0;
  double threshold = 0.0;  // x <= threshold goes left
  NodeStats left;
  NodeStats right;
  double reduction = 0.0;
  // One entry per feature; empty for features without a candidate.
  std::vector<SplitQuantiles> split_quantiles;
};

// (1 / 2n) (G_l^2/H_l + G_r^2/H_r - G^2/H), clamped at 0.
double SplitReduction(const NodeStats& left, const NodeStats& right,
                      const NodeStats& parent);

struct FeatureScan {
  bool has_candidate = false;
  double threshold = 0.0;
  double reduction = 0.0;
  NodeStats left;
  NodeStats right;
  SplitQuantiles quantiles;
};

// Scans one feature. `sorted_rows` holds the node's rows in ascending order
// of `column`. Equal values share a single candidate; the threshold is the
// midpoint between consecutive distinct values. Among equal reductions the
// lowest threshold wins.
FeatureScan ScanFeature(std::span<const double> column,
                        std::span<const RowIndex> sorted_rows,
                        std::span<const double> g, std::span<const double> h,
                        const NodeStats& parent);

// Picks the best scan by (reduction, lower feature index). Returns nothing
// when no feature has a candidate.
std::optional<SplitDecision> ChooseSplit(std::vector<FeatureScan> scans);

// Best split of the node made of `rows` (indices into x, g and h).
std::optional<SplitDecision> BestSplit(const FeatureMatrix& x,
                                       std::span<const RowIndex> rows,
                                       std::span<const double> g,
                                       std::span<const double> h, std::size_t n_total);

// Row order of every feature column, ascending by value then row index.
class SortedColumns {
 public:
  SortedColumns() = default;
  explicit SortedColumns(const FeatureMatrix& x);

  std::span<const RowIndex> order(std::size_t feature) const { return orders_[feature]; }
  std::size_t cols() const { return orders_.size(); }

 private:
  std::vector<std::vector<RowIndex>> orders_;
};

}  // namespace icboost
