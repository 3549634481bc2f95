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

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "icboost/criterion.hpp"
#include "icboost/dataset.hpp"
#include "icboost/splitting.hpp"

namespace icboost {

enum class Algorithm {
  kVanilla,       // split while R + C_R > 0
  kGlobalSubset,  // split while (R + C_R) / pi > max(0, R_1 + C_R1)
};

std::string_view AlgorithmName(Algorithm algorithm);
Algorithm ParseAlgorithm(std::string_view name);

struct TreeNode {
  bool is_leaf = true;
  // Internal nodes.
  std::size_t feature = 0;
  double threshold = 0.0;
  std::size_t left = 0;
  std::size_t right = 0;
  double reduction = 0.0;  // R of the split
  double optimism = 0.0;   // C_R of the split, <= 0
  // Leaves.
  double weight = 0.0;
  std::size_t n_node = 0;
  double loss = 0.0;           // node training loss -G^2 / (2 n H)
  double leaf_optimism = 0.0;  // pi * C_root of the leaf

  bool operator==(const TreeNode&) const = default;
};

// Binary tree stored in preorder; node 0 is the root.
class Tree {
 public:
  Tree() : nodes_(1) {}
  explicit Tree(std::vector<TreeNode> nodes);

  // Single leaf.
  static Tree Leaf(double weight);

  // Routes x[feature] <= threshold to the left. Throws Errc::kData if the
  // row is too short for a split feature.
  double Predict(std::span<const double> row) const;

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::size_t num_leaves() const;
  std::size_t depth() const;
  // Largest split feature index plus one; 0 for a single leaf.
  std::size_t required_arity() const;

  bool operator==(const Tree&) const = default;

 private:
  std::vector<TreeNode> nodes_;
};

struct RootGainProfile {
  double r1 = 0.0;  // root-split reduction
  double c1 = 0.0;  // root-split optimism
};

struct TreeBuildConfig {
  Algorithm algorithm = Algorithm::kGlobalSubset;
  std::size_t max_depth = 32;
};

struct TreeBuildResult {
  Tree tree;
  RootGainProfile root;
  // No root candidate existed; the tree is a single leaf.
  bool degenerate = false;
  // Sums over performed splits.
  double total_reduction = 0.0;
  double total_optimism = 0.0;
  // Leaf weight reached by every training row.
  std::vector<double> row_weights;
  std::vector<std::string> warnings;
};

// Grows one tree on (g, h). The root split is always performed when a
// candidate exists; deeper splits pass the algorithm's gate. `sorted` must be
// SortedColumns(x).
TreeBuildResult BuildTree(const FeatureMatrix& x, const SortedColumns& sorted,
                          std::span<const double> g, std::span<const double> h,
                          const TreeBuildConfig& config, MaxCirEstimator& estimator);

// Convenience overload that sorts the columns itself.
TreeBuildResult BuildTree(const FeatureMatrix& x, std::span<const double> g,
                          std::span<const double> h, const TreeBuildConfig& config,
                          MaxCirEstimator& estimator);

}  // namespace icboost
