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

#include "icboost/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/random/uniform_01.hpp>

#include "icboost/errors.hpp"
#include "icboost/numeric.hpp"

namespace icboost {
namespace {

// Solves log k - digamma(k) = s for the gamma shape k.
double GammaShapeMle(double s) {
  if (!(s > 0.0)) return 1e12;  // every y equals its mean
  double k = (3.0 - s + std::sqrt((s - 3.0) * (s - 3.0) + 24.0 * s)) / (12.0 * s);
  for (int it = 0; it < 100; ++it) {
    const double value = std::log(k) - boost::math::digamma(k) - s;
    const double slope = 1.0 / k - boost::math::trigamma(k);
    double next = k - value / slope;
    if (!(next > 0.0)) next = k / 2.0;
    const bool done = std::abs(next - k) < 1e-12 * k;
    k = next;
    if (done) break;
  }
  return k;
}

double NegBinomNegLogLik(double r, std::span<const double> y, std::span<const double> mu) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double log_denominator = std::log(r + mu[i]);
    acc.Add(std::lgamma(y[i] + r) - std::lgamma(r) +
            r * (std::log(r) - log_denominator) + y[i] * (std::log(mu[i]) - log_denominator));
  }
  return -acc.value();
}

}  // namespace

std::optional<double> EstimateNuisance(const LossSpec& spec, std::span<const double> y,
                                       std::span<const double> f) {
  if (y.size() != f.size() || y.empty()) {
    throw Error(Errc::kData, "response and prediction lengths differ or are empty");
  }
  CheckResponses(spec, y);
  switch (spec.kind()) {
    case LossKind::kMse: {
      CompensatedSum acc;
      for (std::size_t i = 0; i < y.size(); ++i) acc.Add((y[i] - f[i]) * (y[i] - f[i]));
      const double variance = acc.value() / static_cast<double>(y.size());
      return variance > 0.0 ? variance : std::numeric_limits<double>::min();
    }
    case LossKind::kGammaNegInv:
    case LossKind::kGammaLog: {
      CompensatedSum acc;
      for (std::size_t i = 0; i < y.size(); ++i) {
        const double ratio = y[i] / InverseLink(spec, f[i]);
        acc.Add(ratio - std::log(ratio) - 1.0);
      }
      return GammaShapeMle(acc.value() / static_cast<double>(y.size()));
    }
    case LossKind::kNegBinom: {
      std::vector<double> mu(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) mu[i] = InverseLink(spec, f[i]);
      const auto result = boost::math::tools::brent_find_minima(
          [&](double log_r) { return NegBinomNegLogLik(std::exp(log_r), y, mu); }, -10.0,
          15.0, 40);
      return std::exp(result.first);
    }
    case LossKind::kLogloss:
    case LossKind::kPoisson: return std::nullopt;
  }
  return std::nullopt;
}

std::vector<double> KsTransform(const LossSpec& spec, std::span<const double> y,
                                std::span<const double> f, std::optional<double> nuisance,
                                Rng& rng) {
  if (y.size() != f.size()) throw Error(Errc::kData, "response and prediction lengths differ");
  std::vector<double> u(y.size());
  const bool discrete = IsDiscrete(spec.kind());
  boost::random::uniform_01<double> uniform;
  for (std::size_t i = 0; i < y.size(); ++i) {
    CheckResponse(spec, y[i]);
    if (discrete) {
      const double v = uniform(rng);
      u[i] = Cdf(spec, y[i] - 1.0, f[i], nuisance) + v * Pmf(spec, y[i], f[i], nuisance);
    } else {
      u[i] = Cdf(spec, y[i], f[i], nuisance);
    }
    u[i] = std::clamp(u[i], 0.0, 1.0);
  }
  return u;
}

double KolmogorovSurvival(double t) {
  if (!(t > 0.0)) return 1.0;
  double p;
  if (t < 1.0) {
    // Jacobi-theta form of the same distribution; converges fast for small t.
    constexpr double kPi = std::numbers::pi;
    CompensatedSum cdf;
    for (int k = 1; k < 1000; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(-odd * odd * kPi * kPi / (8.0 * t * t));
      cdf.Add(term);
      if (term < 1e-12) break;
    }
    p = 1.0 - std::sqrt(2.0 * kPi) / t * cdf.value();
  } else {
    CompensatedSum series;
    for (int k = 1; k < 1000; ++k) {
      const double term = std::exp(-2.0 * k * k * t * t);
      series.Add((k % 2 == 1) ? term : -term);
      if (term < 1e-12) break;
    }
    p = 2.0 * series.value();
  }
  return std::clamp(p, 0.0, 1.0);
}

KsResult KsTest(std::vector<double> u) {
  if (u.empty()) throw Error(Errc::kData, "Kolmogorov-Smirnov test needs at least one value");
  for (double v : u) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(Errc::kData, "Kolmogorov-Smirnov input " + std::to_string(v) +
                                   " is outside [0, 1]");
    }
  }
  KsResult result;
  std::vector<double> sorted = u;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double above = static_cast<double>(i + 1) / n - sorted[i];
    const double below = sorted[i] - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  result.statistic = d;
  result.p_value = KolmogorovSurvival(std::sqrt(n) * d);
  result.u = std::move(u);
  return result;
}

KsResult ValidateModel(const EnsembleModel& model, const Dataset& data, Rng& rng) {
  data.Validate();
  const std::vector<double> f = model.Predict(data.x);
  std::optional<double> nuisance;
  if (model.loss.kind() == LossKind::kNegBinom) {
    nuisance = model.loss.dispersion();
  } else {
    nuisance = EstimateNuisance(model.loss, data.y, f);
  }
  KsResult result = KsTest(KsTransform(model.loss, data.y, f, nuisance, rng));
  result.nuisance = nuisance;
  if (auto name = NuisanceName(model.loss.kind())) result.nuisance_name = *name;
  return result;
}

std::vector<std::size_t> UniformHistogram(std::span<const double> u, std::size_t bins) {
  std::vector<std::size_t> counts(bins, 0);
  for (double v : u) {
    auto bin = static_cast<std::size_t>(v * static_cast<double>(bins));
    ++counts[std::min(bin, bins - 1)];
  }
  return counts;
}

ImportanceVector FeatureImportance(const EnsembleModel& model) {
  ImportanceVector out;
  const double delta = model.learning_rate;
  std::vector<CompensatedSum> totals(model.n_features);
  for (const Tree& tree : model.trees) {
    for (const TreeNode& node : tree.nodes()) {
      if (node.is_leaf) continue;
      if (node.feature >= totals.size()) {
        throw Error(Errc::kData, "tree splits on feature " + std::to_string(node.feature) +
                                     " beyond the model's feature count");
      }
      totals[node.feature].Add(delta * (2.0 - delta) * node.reduction + delta * node.optimism);
    }
  }
  out.raw.resize(totals.size());
  CompensatedSum grand;
  for (std::size_t j = 0; j < totals.size(); ++j) {
    double v = totals[j].value();
    if (v < 0.0) {
      out.floored.push_back(j);
      v = 0.0;
    }
    out.raw[j] = v;
    grand.Add(v);
  }
  out.share.assign(totals.size(), 0.0);
  if (grand.value() > 0.0) {
    for (std::size_t j = 0; j < totals.size(); ++j) out.share[j] = out.raw[j] / grand.value();
  }
  return out;
}

}  // namespace icboost
