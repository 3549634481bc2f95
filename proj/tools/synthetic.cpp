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

#include "synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "icboost/errors.hpp"

namespace icboost::synth {
namespace {

std::vector<std::string> DefaultNames(std::size_t m) {
  std::vector<std::string> names(m);
  for (std::size_t j = 0; j < m; ++j) names[j] = "x" + std::to_string(j + 1);
  return names;
}

}  // namespace

// Boost distributions give the same draws on every standard library.

Dataset LinearGaussian(std::size_t n, std::uint64_t seed, std::size_t noise_features) {
  std::mt19937_64 rng(seed);
  boost::random::uniform_real_distribution<double> uniform(0.0, 5.0);
  boost::random::normal_distribution<double> normal;
  const std::size_t m = 1 + noise_features;
  Dataset data;
  data.x = FeatureMatrix(n, m);
  data.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) data.x.at(i, j) = uniform(rng);
    data.y[i] = data.x.at(i, 0) + normal(rng);
  }
  data.feature_names = DefaultNames(m);
  return data;
}

Dataset PureNoise(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  boost::random::uniform_real_distribution<double> uniform(0.0, 1.0);
  boost::random::normal_distribution<double> normal;
  Dataset data;
  data.x = FeatureMatrix(n, m);
  data.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) data.x.at(i, j) = uniform(rng);
    data.y[i] = normal(rng);
  }
  data.feature_names = DefaultNames(m);
  return data;
}

Dataset Classification(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m < 3) throw Error(Errc::kConfig, "the classification generator needs at least 3 features");
  std::mt19937_64 rng(seed);
  boost::random::normal_distribution<double> normal;
  boost::random::uniform_real_distribution<double> uniform(0.0, 1.0);
  Dataset data;
  data.x = FeatureMatrix(n, m);
  data.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) data.x.at(i, j) = normal(rng);
    const double eta = data.x.at(i, 0) - data.x.at(i, 1) + data.x.at(i, 0) * data.x.at(i, 2);
    const double p = 1.0 / (1.0 + std::exp(-eta));
    data.y[i] = uniform(rng) < p ? 1.0 : 0.0;
  }
  data.feature_names = DefaultNames(m);
  return data;
}

Dataset Interaction(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  boost::random::normal_distribution<double> normal;
  Dataset data;
  data.x = FeatureMatrix(n, 2);
  data.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    data.x.at(i, 0) = normal(rng);
    data.x.at(i, 1) = normal(rng);
    const double signal = (data.x.at(i, 0) > 0.0 && data.x.at(i, 1) > 0.0) ? 1.0 : 0.0;
    data.y[i] = signal + 0.1 * normal(rng);
  }
  data.feature_names = DefaultNames(2);
  return data;
}

Dataset Generate(std::string_view name, std::size_t n, std::size_t m, std::uint64_t seed) {
  if (name == "linear") return LinearGaussian(n, seed, m > 0 ? m - 1 : 0);
  if (name == "noise") return PureNoise(n, std::max<std::size_t>(m, 1), seed);
  if (name == "classification") return Classification(n, m, seed);
  throw Error(Errc::kConfig, "unknown synthetic generator '" + std::string(name) +
                                 "' (expected linear, noise or classification)");
}

}  // namespace icboost::synth
