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

// Shared generators for tests: responses from a known model and in-domain
// loss evaluation points.

#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include <boost/random/gamma_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>

#include "icboost/losses.hpp"

namespace icboost::fixture {

// Responses drawn from a known model with per-row link values.
struct Simulated {
  LossSpec spec;
  std::vector<double> y;
  std::vector<double> f;
  std::optional<double> nuisance;
};

inline Simulated Simulate(LossKind kind, std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> spread(-1.0, 1.0);
  Simulated s{LossSpec(kind == LossKind::kNegBinom ? LossSpec(kind, 2.5) : LossSpec(kind)),
              {}, {}, std::nullopt};
  s.y.resize(n);
  s.f.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = spread(rng);
    switch (kind) {
      case LossKind::kMse: {
        s.f[i] = 3.0 * t;
        s.nuisance = 2.0;
        s.y[i] = std::normal_distribution<double>(s.f[i], std::sqrt(2.0))(rng);
        break;
      }
      case LossKind::kLogloss: {
        s.f[i] = 2.0 * t;
        const double p = 1.0 / (1.0 + std::exp(-s.f[i]));
        s.y[i] = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p ? 1.0 : 0.0;
        break;
      }
      case LossKind::kGammaNegInv:
      case LossKind::kGammaLog: {
        const double mean = std::exp(t);
        s.f[i] = kind == LossKind::kGammaLog ? std::log(mean) : -1.0 / mean;
        s.nuisance = 1.7;
        s.y[i] = boost::random::gamma_distribution<double>(1.7, mean / 1.7)(rng);
        break;
      }
      case LossKind::kPoisson: {
        s.f[i] = 1.0 + t;
        s.y[i] = boost::random::poisson_distribution<int, double>(std::exp(s.f[i]))(rng);
        break;
      }
      case LossKind::kNegBinom: {
        s.f[i] = 1.0 + t;
        const double r = 2.5;
        const double mean = std::exp(s.f[i]);
        s.nuisance = r;
        // NB(r, p) counts failures before r successes with mean r (1 - p) / p.
        const double p = r / (r + mean);
        const double lambda = boost::random::gamma_distribution<double>(r, (1 - p) / p)(rng);
        s.y[i] = boost::random::poisson_distribution<int, double>(lambda)(rng);
        break;
      }
    }
  }
  return s;
}

inline const std::vector<LossKind> kAllKinds = {LossKind::kMse,      LossKind::kLogloss,
                                         LossKind::kGammaNegInv, LossKind::kGammaLog,
                                         LossKind::kPoisson,  LossKind::kNegBinom};

struct Domain {
  LossSpec spec;
  double f_lo;
  double f_hi;
  // Draws an in-domain response.
  std::function<double(std::mt19937_64&)> draw_y;
};

inline std::vector<Domain> AllDomains() {
  auto positive = [](std::mt19937_64& rng) {
    return std::uniform_real_distribution<double>(0.05, 10.0)(rng);
  };
  auto count = [](std::mt19937_64& rng) {
    return static_cast<double>(std::uniform_int_distribution<int>(0, 20)(rng));
  };
  return {
      {LossSpec(LossKind::kMse), -10.0, 10.0,
       [](std::mt19937_64& rng) { return std::normal_distribution<double>(0.0, 5.0)(rng); }},
      {LossSpec(LossKind::kLogloss), -6.0, 6.0,
       [](std::mt19937_64& rng) { return static_cast<double>(rng() % 2); }},
      {LossSpec(LossKind::kGammaNegInv), -3.0, -0.1, positive},
      {LossSpec(LossKind::kGammaLog), -3.0, 3.0, positive},
      {LossSpec(LossKind::kPoisson), -3.0, 3.0, count},
      {LossSpec(LossKind::kNegBinom, 2.0), -3.0, 3.0, count},
  };
}

}  // namespace icboost::fixture
