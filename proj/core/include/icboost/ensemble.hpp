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
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "icboost/dataset.hpp"
#include "icboost/losses.hpp"
#include "icboost/tree.hpp"

namespace icboost {

struct TrainConfig {
  double learning_rate = 0.01;
  Algorithm algorithm = Algorithm::kGlobalSubset;
  // Print a progress line at the first and every `verbose`-th iteration;
  // 0 is silent.
  std::size_t verbose = 0;
  std::uint64_t seed = 1;
  std::size_t n_sim = 1000;
  std::size_t max_iterations = 30000;
  std::size_t max_depth = 32;

  // Throws Errc::kConfig on out-of-range values.
  void Validate() const;
};

struct IterationRecord {
  std::size_t iteration = 0;
  std::size_t leaves = 0;
  double train_loss = 0.0;
  // Training loss plus the accumulated learning-rate-scaled optimism.
  double gen_loss = 0.0;
};

enum class StopReason {
  kCriterion,     // the next tree failed the stopping inequality
  kIterationCap,  // max_iterations reached
};

struct TrainingSummary {
  StopReason stop_reason = StopReason::kCriterion;
  // Left-hand side of the failed stopping inequality for the discarded tree.
  double rejected_tree_score = 0.0;
  std::size_t rejected_tree_leaves = 0;
  std::vector<std::string> warnings;
};

struct EnsembleModel {
  LossSpec loss{LossKind::kMse};
  double initial_prediction = 0.0;
  double learning_rate = 0.01;
  std::vector<Tree> trees;
  std::vector<IterationRecord> log;

  // Training metadata.
  Algorithm algorithm = Algorithm::kGlobalSubset;
  std::uint64_t seed = 1;
  std::size_t n_sim = 1000;
  std::size_t n_features = 0;
  std::vector<std::string> feature_names;
  TrainingSummary summary;

  // f0 + delta * sum_k tree_k(x), link scale. Throws Errc::kData on an arity
  // mismatch.
  double PredictRow(std::span<const double> row) const;
  std::vector<double> Predict(const FeatureMatrix& x) const;
  // Inverse link applied to Predict.
  std::vector<double> PredictResponse(const FeatureMatrix& x) const;
};

// Called after every accepted tree.
using IterationObserver =
    std::function<void(const EnsembleModel& model, const IterationRecord& record)>;

// Boosts until a tree fails delta (2 - delta) R + delta C_R > 0, where R and
// C_R are the tree's summed split reductions and optimisms. Loss-domain
// errors abort training; the message names the iteration.
EnsembleModel Train(const Dataset& data, const LossSpec& loss, const TrainConfig& config,
                    std::ostream* verbose_out = nullptr,
                    const IterationObserver& observer = {});

// The `it: 1  |  n-leaves: 3  |  tr loss: ...  |  gen loss: ...` line.
std::string FormatIterationLine(const IterationRecord& record);

}  // namespace icboost
