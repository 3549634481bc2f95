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

#include "icboost/ensemble.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "icboost/criterion.hpp"
#include "icboost/errors.hpp"

namespace icboost {

void TrainConfig::Validate() const {
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
    throw Error(Errc::kConfig, "learning rate must lie in (0, 1]");
  }
  if (max_iterations < 1) throw Error(Errc::kConfig, "max_iterations must be at least 1");
  if (n_sim < 1) throw Error(Errc::kConfig, "n_sim must be at least 1");
  if (max_depth < 1) throw Error(Errc::kConfig, "max_depth must be at least 1");
}

double EnsembleModel::PredictRow(std::span<const double> row) const {
  if (row.size() != n_features) {
    throw Error(Errc::kData, "expected " + std::to_string(n_features) +
                                 " features per row, got " + std::to_string(row.size()));
  }
  double f = initial_prediction;
  for (const Tree& tree : trees) f += learning_rate * tree.Predict(row);
  return f;
}

std::vector<double> EnsembleModel::Predict(const FeatureMatrix& x) const {
  if (x.cols() != n_features) {
    throw Error(Errc::kData, "expected " + std::to_string(n_features) +
                                 " feature columns, got " + std::to_string(x.cols()));
  }
  std::vector<double> out(x.rows(), initial_prediction);
  std::vector<double> row;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    x.CopyRow(i, row);
    double f = initial_prediction;
    for (const Tree& tree : trees) f += learning_rate * tree.Predict(row);
    out[i] = f;
  }
  return out;
}

std::vector<double> EnsembleModel::PredictResponse(const FeatureMatrix& x) const {
  std::vector<double> f = Predict(x);
  for (double& v : f) v = InverseLink(loss, v);
  return f;
}

std::string FormatIterationLine(const IterationRecord& record) {
  char buffer[160];
  std::snprintf(buffer, sizeof(buffer), "it: %zu  |  n-leaves: %zu  |  tr loss: %.4f  |  gen loss: %.4f",
                record.iteration, record.leaves, record.train_loss, record.gen_loss);
  return buffer;
}

EnsembleModel Train(const Dataset& data, const LossSpec& loss, const TrainConfig& config,
                    std::ostream* verbose_out, const IterationObserver& observer) {
  config.Validate();
  data.Validate();
  if (data.rows() < 2) throw Error(Errc::kData, "training needs at least two rows");
  if (data.cols() < 1) throw Error(Errc::kData, "training needs at least one feature");

  EnsembleModel model;
  model.loss = loss;
  model.learning_rate = config.learning_rate;
  model.algorithm = config.algorithm;
  model.seed = config.seed;
  model.n_sim = config.n_sim;
  model.n_features = data.cols();
  model.feature_names = data.feature_names;
  model.initial_prediction = InitialPrediction(loss, data.y);

  const double delta = config.learning_rate;
  const std::size_t n = data.rows();
  const SortedColumns sorted(data.x);
  MaxCirEstimator estimator(config.n_sim, config.seed);
  const TreeBuildConfig tree_config{config.algorithm, config.max_depth};

  std::vector<double> predictions(n, model.initial_prediction);
  GradHessBuffer derivatives;
  double accumulated_optimism = 0.0;

  for (std::size_t iteration = 1;; ++iteration) {
    if (iteration > config.max_iterations) {
      model.summary.stop_reason = StopReason::kIterationCap;
      model.summary.warnings.push_back("stopped at the iteration cap of " +
                                       std::to_string(config.max_iterations) +
                                       " before the stopping criterion was met");
      break;
    }
    try {
      GradHessInto(loss, data.y, predictions, derivatives);
      TreeBuildResult built = BuildTree(data.x, sorted, derivatives.g, derivatives.h,
                                        tree_config, estimator);
      for (auto& w : built.warnings) {
        model.summary.warnings.push_back("iteration " + std::to_string(iteration) + ": " + w);
      }

      const double score = delta * (2.0 - delta) * built.total_reduction +
                           delta * built.total_optimism;
      if (!(score > 0.0)) {
        model.summary.stop_reason = StopReason::kCriterion;
        model.summary.rejected_tree_score = score;
        model.summary.rejected_tree_leaves = built.tree.num_leaves();
        break;
      }

      for (std::size_t i = 0; i < n; ++i) {
        predictions[i] += delta * built.row_weights[i];
        CheckPrediction(loss, predictions[i]);
      }
      accumulated_optimism -= delta * built.total_optimism;

      IterationRecord record;
      record.iteration = iteration;
      record.leaves = built.tree.num_leaves();
      record.train_loss = MeanLoss(loss, data.y, predictions);
      record.gen_loss = record.train_loss + accumulated_optimism;
      model.trees.push_back(std::move(built.tree));
      model.log.push_back(record);

      if (verbose_out != nullptr && config.verbose > 0 &&
          (iteration == 1 || iteration % config.verbose == 0)) {
        *verbose_out << FormatIterationLine(record) << '\n';
      }
      if (observer) observer(model, record);
    } catch (const Error& e) {
      throw Error(e.code(), "iteration " + std::to_string(iteration) + ": " + e.what());
    }
  }
  return model;
}

}  // namespace icboost
