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

// Loss/link families. Every loss is a negative log-likelihood in the
// prediction f (link scale), up to terms that do not depend on f:
//
//   mse            Gaussian, mu = f                 1/2 (y - f)^2
//   logloss        Bernoulli, logit(mu) = f         log(1 + e^f) - y f
//   gamma::neginv  Gamma, -1/mu = f                 -y f - log(-f)
//   gamma::log     Gamma, log(mu) = f               y e^-f + f
//   poisson        Poisson, log(mu) = f             e^f - y f
//   negbinom       NegBin(r), log(mu) = f           (y + r) log(e^f + r) - y f
//
// Gamma losses fix the shape at 1; the shape cancels in the argmin over f.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace icboost {

enum class LossKind { kMse, kLogloss, kGammaNegInv, kGammaLog, kPoisson, kNegBinom };

class LossSpec {
 public:
  // Throws Errc::kConfig if `dispersion` is missing or non-positive for
  // negbinom. The dispersion is ignored for every other kind.
  explicit LossSpec(LossKind kind, std::optional<double> dispersion = std::nullopt);

  // Parses the CLI names: mse, logloss, gamma::neginv, gamma::log, poisson,
  // negbinom.
  static LossSpec Parse(std::string_view name,
                        std::optional<double> dispersion = std::nullopt);

  LossKind kind() const { return kind_; }
  // Meaningful for negbinom only.
  double dispersion() const { return dispersion_; }
  std::string_view name() const;

  bool operator==(const LossSpec&) const = default;

 private:
  LossKind kind_;
  double dispersion_ = 0.0;
};

std::string_view LossName(LossKind kind);
bool IsDiscrete(LossKind kind);

// Link-scale values at or above this bound are outside the gamma::neginv
// domain (f must be strictly negative).
inline constexpr double kNegInvUpperBound = -1e-12;

// Throws Errc::kDomain naming the value if y is not in the response domain.
void CheckResponse(const LossSpec& spec, double y);
void CheckResponses(const LossSpec& spec, std::span<const double> y);
// Throws Errc::kDomain if f is not in the link domain.
void CheckPrediction(const LossSpec& spec, double f);

double LossValue(const LossSpec& spec, double y, double f);

// Mean of LossValue over the rows.
double MeanLoss(const LossSpec& spec, std::span<const double> y,
                std::span<const double> f);

struct GradHessBuffer {
  std::vector<double> g;
  std::vector<double> h;
};

// Analytic first and second derivatives of LossValue in f. Throws
// Errc::kConvexity if any h_i <= 0.
GradHessBuffer GradHess(const LossSpec& spec, std::span<const double> y,
                        std::span<const double> f);
void GradHessInto(const LossSpec& spec, std::span<const double> y,
                  std::span<const double> f, GradHessBuffer& out);

// Constant f minimizing the mean loss. Throws Errc::kDegenerateResponse when
// no finite minimizer exists (e.g. an all-zero logloss response).
double InitialPrediction(const LossSpec& spec, std::span<const double> y);

// Mean of the response distribution at link value f.
double InverseLink(const LossSpec& spec, double f);
double Link(const LossSpec& spec, double mean);

// Name of the non-predicted distribution parameter, if the family has one:
// "variance" (mse), "shape" (gamma), "dispersion" (negbinom).
std::optional<std::string_view> NuisanceName(LossKind kind);

// P(Y <= y) with mean InverseLink(f). `nuisance` supplies the Gaussian
// variance, the gamma shape or the negbinom dispersion. For negbinom the
// LossSpec's own dispersion is used when `nuisance` is empty. Throws
// Errc::kConfig when a required nuisance is missing.
double Cdf(const LossSpec& spec, double y, double f,
           std::optional<double> nuisance = std::nullopt);

// P(Y = y) for the discrete families (logloss, poisson, negbinom).
double Pmf(const LossSpec& spec, double y, double f,
           std::optional<double> nuisance = std::nullopt);

}  // namespace icboost
