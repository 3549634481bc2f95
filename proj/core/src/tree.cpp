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

#include "icboost/tree.hpp"

#include <algorithm>
#include <string>

#include "icboost/errors.hpp"

namespace icboost {

std::string_view AlgorithmName(Algorithm algorithm) {
  return algorithm == Algorithm::kVanilla ? "vanilla" : "global-subset";
}

Algorithm ParseAlgorithm(std::string_view name) {
  if (name == "vanilla") return Algorithm::kVanilla;
  if (name == "global-subset" || name == "global_subset") return Algorithm::kGlobalSubset;
  throw Error(Errc::kConfig, "unknown algorithm '" + std::string(name) +
                                 "' (expected vanilla or global-subset)");
}

Tree::Tree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw Error(Errc::kData, "a tree needs at least one node");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const TreeNode& node = nodes_[i];
    if (node.is_leaf) continue;
    if (node.left <= i || node.right <= i || node.left >= nodes_.size() ||
        node.right >= nodes_.size()) {
      throw Error(Errc::kData, "tree node " + std::to_string(i) + " has invalid children");
    }
  }
}

Tree Tree::Leaf(double weight) {
  TreeNode leaf;
  leaf.weight = weight;
  return Tree({leaf});
}

double Tree::Predict(std::span<const double> row) const {
  std::size_t i = 0;
  while (!nodes_[i].is_leaf) {
    const TreeNode& node = nodes_[i];
    if (node.feature >= row.size()) {
      throw Error(Errc::kData, "row has " + std::to_string(row.size()) +
                                   " features but the tree splits on feature " +
                                   std::to_string(node.feature));
    }
    i = row[node.feature] <= node.threshold ? node.left : node.right;
  }
  return nodes_[i].weight;
}

std::size_t Tree::num_leaves() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf; }));
}

std::size_t Tree::depth() const {
  std::vector<std::size_t> depth_of(nodes_.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, depth_of[i]);
    if (!nodes_[i].is_leaf) {
      depth_of[nodes_[i].left] = depth_of[i] + 1;
      depth_of[nodes_[i].right] = depth_of[i] + 1;
    }
  }
  return deepest;
}

std::size_t Tree::required_arity() const {
  std::size_t arity = 0;
  for (const TreeNode& node : nodes_) {
    if (!node.is_leaf) arity = std::max(arity, node.feature + 1);
  }
  return arity;
}

namespace {

class TreeBuilder {
 public:
  TreeBuilder(const FeatureMatrix& x, std::span<const double> g, std::span<const double> h,
              const TreeBuildConfig& config, MaxCirEstimator& estimator)
      : x_(x), g_(g), h_(h), config_(config), estimator_(estimator),
        n_total_(x.rows()), goes_left_(x.rows(), 0) {
    result_.row_weights.assign(x.rows(), 0.0);
  }

  TreeBuildResult Run(const SortedColumns& sorted) {
    std::vector<std::vector<RowIndex>> root(x_.cols());
    for (std::size_t j = 0; j < x_.cols(); ++j) {
      root[j].assign(sorted.order(j).begin(), sorted.order(j).end());
    }
    Grow(std::move(root), 0);
    result_.tree = Tree(std::move(nodes_));
    return std::move(result_);
  }

 private:
  std::size_t Grow(std::vector<std::vector<RowIndex>> node_rows, std::size_t depth) {
    const std::size_t index = nodes_.size();
    nodes_.emplace_back();
    const std::span<const RowIndex> rows = node_rows[0];
    const NodeStats stats = ComputeNodeStats(g_, h_, rows, n_total_);
    const double weight = LeafWeight(stats);
    const bool is_root = depth == 0;

    if (rows.size() < 2) return MakeLeaf(index, rows, stats, weight);

    std::vector<FeatureScan> scans;
    scans.reserve(x_.cols());
    for (std::size_t j = 0; j < x_.cols(); ++j) {
      scans.push_back(ScanFeature(x_.column(j), node_rows[j], g_, h_, stats));
    }
    std::optional<SplitDecision> decision = ChooseSplit(std::move(scans));
    if (!decision) {
      if (is_root) result_.degenerate = true;
      return MakeLeaf(index, rows, stats, weight);
    }

    const double c_root = RootOptimism(g_, h_, rows, weight);
    const double e_max = estimator_.ExpectedMax(decision->split_quantiles);
    const double pi = stats.pi();
    const double optimism = LossReductionOptimism(c_root, pi, e_max);
    const double reduction = decision->reduction;

    if (is_root) {
      result_.root = RootGainProfile{reduction, optimism};
    } else if (!PassesGate(reduction, optimism, pi)) {
      return MakeLeaf(index, rows, stats, weight);
    }
    if (depth >= config_.max_depth) {
      if (!depth_warned_) {
        result_.warnings.push_back("tree depth cap " + std::to_string(config_.max_depth) +
                                   " reached; growth stopped before the criterion did");
        depth_warned_ = true;
      }
      return MakeLeaf(index, rows, stats, weight);
    }

    const std::size_t feature = decision->feature;
    const double threshold = decision->threshold;
    const auto column = x_.column(feature);
    for (RowIndex i : rows) goes_left_[i] = column[i] <= threshold ? 1 : 0;

    std::vector<std::vector<RowIndex>> left(x_.cols());
    std::vector<std::vector<RowIndex>> right(x_.cols());
    for (std::size_t j = 0; j < x_.cols(); ++j) {
      left[j].reserve(decision->left.n_node);
      right[j].reserve(decision->right.n_node);
      for (RowIndex i : node_rows[j]) (goes_left_[i] ? left[j] : right[j]).push_back(i);
    }
    node_rows.clear();
    node_rows.shrink_to_fit();

    {
      TreeNode& node = nodes_[index];
      node.is_leaf = false;
      node.feature = feature;
      node.threshold = threshold;
      node.reduction = reduction;
      node.optimism = optimism;
      node.n_node = stats.n_node;
      node.weight = weight;
    }
    result_.total_reduction += reduction;
    result_.total_optimism += optimism;

    const std::size_t left_index = Grow(std::move(left), depth + 1);
    nodes_[index].left = left_index;
    const std::size_t right_index = Grow(std::move(right), depth + 1);
    nodes_[index].right = right_index;
    return index;
  }

  bool PassesGate(double reduction, double optimism, double pi) const {
    if (config_.algorithm == Algorithm::kVanilla) return reduction + optimism > 0.0;
    const double next_root = std::max(0.0, result_.root.r1 + result_.root.c1);
    return (reduction + optimism) / pi > next_root;
  }

  std::size_t MakeLeaf(std::size_t index, std::span<const RowIndex> rows,
                       const NodeStats& stats, double weight) {
    TreeNode& node = nodes_[index];
    node.is_leaf = true;
    node.weight = weight;
    node.n_node = stats.n_node;
    node.loss = NodeLoss(stats);
    node.leaf_optimism = stats.pi() * RootOptimism(g_, h_, rows, weight);
    for (RowIndex i : rows) result_.row_weights[i] = weight;
    return index;
  }

  const FeatureMatrix& x_;
  std::span<const double> g_;
  std::span<const double> h_;
  const TreeBuildConfig& config_;
  MaxCirEstimator& estimator_;
  std::size_t n_total_;
  std::vector<unsigned char> goes_left_;
  std::vector<TreeNode> nodes_;
  TreeBuildResult result_;
  bool depth_warned_ = false;
};

}  // namespace

TreeBuildResult BuildTree(const FeatureMatrix& x, const SortedColumns& sorted,
                          std::span<const double> g, std::span<const double> h,
                          const TreeBuildConfig& config, MaxCirEstimator& estimator) {
  if (x.rows() < 2) throw Error(Errc::kData, "a tree needs at least two training rows");
  if (x.cols() == 0) throw Error(Errc::kData, "a tree needs at least one feature");
  if (g.size() != x.rows() || h.size() != x.rows()) {
    throw Error(Errc::kData, "gradient buffers do not match the row count");
  }
  if (sorted.cols() != x.cols()) {
    throw Error(Errc::kData, "sorted column index does not match the feature matrix");
  }
  return TreeBuilder(x, g, h, config, estimator).Run(sorted);
}

TreeBuildResult BuildTree(const FeatureMatrix& x, std::span<const double> g,
                          std::span<const double> h, const TreeBuildConfig& config,
                          MaxCirEstimator& estimator) {
  return BuildTree(x, SortedColumns(x), g, h, config, estimator);
}

}  // namespace icboost
