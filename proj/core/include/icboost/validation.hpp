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

// Goodness of fit and feature importance for fitted ensembles.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "icboost/criterion.hpp"
#include "icboost/dataset.hpp"
#include "icboost/ensemble.hpp"
#include "icboost/losses.hpp"

namespace icboost {

// Maximum-likelihood estimate of the family's nuisance parameter given
// link-scale predictions: Gaussian variance by the mean squared residual,
// gamma shape by Newton iterations on the profile likelihood, negbinom
// dispersion by a bounded profile-likelihood search. Empty for families
// without a nuisance parameter.
std::optional<double> EstimateNuisance(const LossSpec& spec, std::span<const double> y,
                                       std::span<const double> f);

// Probability integral transform. Continuous families use u = F(y); discrete
// families use u = F(y - 1) + V p(y) with V ~ U(0, 1) drawn from `rng`.
std::vector<double> KsTransform(const LossSpec& spec, std::span<const double> y,
                                std::span<const double> f, std::optional<double> nuisance,
                                Rng& rng);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::vector<double> u;
  std::optional<double> nuisance;
  std::string nuisance_name;
};

// One-sample Kolmogorov-Smirnov test of u against U(0, 1), asymptotic
// p-value. Throws Errc::kData for an empty input or entries outside [0, 1].
KsResult KsTest(std::vector<double> u);

// P(sqrt(n) D > t) under the Kolmogorov limit law.
double KolmogorovSurvival(double t);

// Transforms the labeled data through the model (nuisance estimated from the
// same data, except the negbinom dispersion, which comes from the model) and
// runs KsTest.
KsResult ValidateModel(const EnsembleModel& model, const Dataset& data, Rng& rng);

// Histogram of u over `bins` equal-width bins of [0, 1].
std::vector<std::size_t> UniformHistogram(std::span<const double> u, std::size_t bins = 20);

struct ImportanceVector {
  std::vector<double> raw;    // accumulated delta (2 - delta) R + delta C_R
  std::vector<double> share;  // raw / sum(raw); all zero when nothing is used
  // Features whose accumulated total was negative and floored to 0.
  std::vector<std::size_t> floored;
};

// Adds delta (2 - delta) R_t + delta C_R_t of every split node t to its
// feature. Totals are floored at 0.
ImportanceVector FeatureImportance(const EnsembleModel& model);

}  // namespace icboost
