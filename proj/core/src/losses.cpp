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

#include "icboost/losses.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/negative_binomial.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/poisson.hpp>

#include "icboost/errors.hpp"
#include "icboost/numeric.hpp"

namespace icboost {
namespace {

double Softplus(double f) {
  return f > 0.0 ? f + std::log1p(std::exp(-f)) : std::log1p(std::exp(f));
}

double Sigmoid(double f) {
  if (f >= 0.0) return 1.0 / (1.0 + std::exp(-f));
  const double e = std::exp(f);
  return e / (1.0 + e);
}

[[noreturn]] void ThrowDomain(const LossSpec& spec, const char* what, double value) {
  std::ostringstream os;
  os.precision(17);
  os << spec.name() << ": " << what << " " << value << " is outside the domain";
  throw Error(Errc::kDomain, os.str());
}

bool IsNonNegativeInteger(double y) {
  return std::isfinite(y) && y >= 0.0 && std::floor(y) == y;
}

double RequireNuisance(const LossSpec& spec, std::optional<double> nuisance) {
  if (spec.kind() == LossKind::kNegBinom && !nuisance) return spec.dispersion();
  if (!nuisance) {
    throw Error(Errc::kConfig, std::string(spec.name()) + ": missing " +
                                   std::string(*NuisanceName(spec.kind())) +
                                   " parameter for the distribution function");
  }
  if (!(*nuisance > 0.0) || !std::isfinite(*nuisance)) {
    throw Error(Errc::kConfig, std::string(spec.name()) +
                                   ": nuisance parameter must be positive and finite");
  }
  return *nuisance;
}

}  // namespace

LossSpec::LossSpec(LossKind kind, std::optional<double> dispersion) : kind_(kind) {
  if (kind == LossKind::kNegBinom) {
    if (!dispersion) {
      throw Error(Errc::kConfig, "negbinom requires a dispersion parameter");
    }
    if (!(*dispersion > 0.0) || !std::isfinite(*dispersion)) {
      throw Error(Errc::kConfig, "negbinom dispersion must be positive and finite");
    }
    dispersion_ = *dispersion;
  }
}

LossSpec LossSpec::Parse(std::string_view name, std::optional<double> dispersion) {
  for (LossKind kind : {LossKind::kMse, LossKind::kLogloss, LossKind::kGammaNegInv,
                        LossKind::kGammaLog, LossKind::kPoisson, LossKind::kNegBinom}) {
    if (name == LossName(kind)) return LossSpec(kind, dispersion);
  }
  throw Error(Errc::kConfig,
              "unknown loss '" + std::string(name) +
                  "' (expected mse, logloss, gamma::neginv, gamma::log, poisson, negbinom)");
}

std::string_view LossSpec::name() const { return LossName(kind_); }

std::string_view LossName(LossKind kind) {
  switch (kind) {
    case LossKind::kMse: return "mse";
    case LossKind::kLogloss: return "logloss";
    case LossKind::kGammaNegInv: return "gamma::neginv";
    case LossKind::kGammaLog: return "gamma::log";
    case LossKind::kPoisson: return "poisson";
    case LossKind::kNegBinom: return "negbinom";
  }
  return "unknown";
}

bool IsDiscrete(LossKind kind) {
  return kind == LossKind::kLogloss || kind == LossKind::kPoisson ||
         kind == LossKind::kNegBinom;
}

void CheckResponse(const LossSpec& spec, double y) {
  bool ok = std::isfinite(y);
  switch (spec.kind()) {
    case LossKind::kMse: break;
    case LossKind::kLogloss: ok = ok && (y == 0.0 || y == 1.0); break;
    case LossKind::kGammaNegInv:
    case LossKind::kGammaLog: ok = ok && y > 0.0; break;
    case LossKind::kPoisson:
    case LossKind::kNegBinom: ok = IsNonNegativeInteger(y); break;
  }
  if (!ok) ThrowDomain(spec, "response", y);
}

void CheckResponses(const LossSpec& spec, std::span<const double> y) {
  for (double v : y) CheckResponse(spec, v);
}

void CheckPrediction(const LossSpec& spec, double f) {
  if (!std::isfinite(f)) ThrowDomain(spec, "prediction", f);
  if (spec.kind() == LossKind::kGammaNegInv && f >= kNegInvUpperBound) {
    ThrowDomain(spec, "prediction", f);
  }
}

double LossValue(const LossSpec& spec, double y, double f) {
  CheckResponse(spec, y);
  CheckPrediction(spec, f);
  switch (spec.kind()) {
    case LossKind::kMse: return 0.5 * (y - f) * (y - f);
    case LossKind::kLogloss: return Softplus(f) - y * f;
    case LossKind::kGammaNegInv: return -y * f - std::log(-f);
    case LossKind::kGammaLog: return y * std::exp(-f) + f;
    case LossKind::kPoisson: return std::exp(f) - y * f;
    case LossKind::kNegBinom: {
      const double r = spec.dispersion();
      // log(e^f + r) = log r + softplus(f - log r)
      const double log_r = std::log(r);
      return (y + r) * (log_r + Softplus(f - log_r)) - y * f;
    }
  }
  return 0.0;
}

double MeanLoss(const LossSpec& spec, std::span<const double> y,
                std::span<const double> f) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < y.size(); ++i) acc.Add(LossValue(spec, y[i], f[i]));
  return acc.value() / static_cast<double>(y.size());
}

void GradHessInto(const LossSpec& spec, std::span<const double> y,
                  std::span<const double> f, GradHessBuffer& out) {
  if (y.size() != f.size()) {
    throw Error(Errc::kData, "response and prediction lengths differ");
  }
  const std::size_t n = y.size();
  out.g.resize(n);
  out.h.resize(n);
  const double r = spec.dispersion();
  const double log_r = spec.kind() == LossKind::kNegBinom ? std::log(r) : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double yi = y[i];
    const double fi = f[i];
    CheckResponse(spec, yi);
    CheckPrediction(spec, fi);
    double g = 0.0;
    double h = 0.0;
    switch (spec.kind()) {
      case LossKind::kMse:
        g = fi - yi;
        h = 1.0;
        break;
      case LossKind::kLogloss: {
        const double p = Sigmoid(fi);
        g = p - yi;
        h = p * (1.0 - p);
        break;
      }
      case LossKind::kGammaNegInv:
        g = -yi - 1.0 / fi;
        h = 1.0 / (fi * fi);
        break;
      case LossKind::kGammaLog: {
        const double ye = yi * std::exp(-fi);
        g = 1.0 - ye;
        h = ye;
        break;
      }
      case LossKind::kPoisson: {
        const double mu = std::exp(fi);
        g = mu - yi;
        h = mu;
        break;
      }
      case LossKind::kNegBinom: {
        const double p = Sigmoid(fi - log_r);  // e^f / (e^f + r)
        g = (yi + r) * p - yi;
        h = (yi + r) * p * (1.0 - p);
        break;
      }
    }
    if (!(h > 0.0)) {
      std::ostringstream os;
      os.precision(17);
      os << spec.name() << ": non-positive second derivative " << h << " at row " << i
         << " (y=" << yi << ", f=" << fi << ")";
      throw Error(Errc::kConvexity, os.str());
    }
    out.g[i] = g;
    out.h[i] = h;
  }
}

GradHessBuffer GradHess(const LossSpec& spec, std::span<const double> y,
                        std::span<const double> f) {
  GradHessBuffer out;
  GradHessInto(spec, y, f, out);
  return out;
}

double InverseLink(const LossSpec& spec, double f) {
  switch (spec.kind()) {
    case LossKind::kMse: return f;
    case LossKind::kLogloss: return Sigmoid(f);
    case LossKind::kGammaNegInv:
      if (f >= kNegInvUpperBound || !std::isfinite(f)) ThrowDomain(spec, "prediction", f);
      return -1.0 / f;
    case LossKind::kGammaLog:
    case LossKind::kPoisson:
    case LossKind::kNegBinom: return std::exp(f);
  }
  return f;
}

double Link(const LossSpec& spec, double mean) {
  switch (spec.kind()) {
    case LossKind::kMse: return mean;
    case LossKind::kLogloss: return std::log(mean / (1.0 - mean));
    case LossKind::kGammaNegInv: return -1.0 / mean;
    case LossKind::kGammaLog:
    case LossKind::kPoisson:
    case LossKind::kNegBinom: return std::log(mean);
  }
  return mean;
}

double InitialPrediction(const LossSpec& spec, std::span<const double> y) {
  if (y.empty()) throw Error(Errc::kData, "empty response");
  CheckResponses(spec, y);
  const double mean = Mean(y);
  if (spec.kind() == LossKind::kMse) return mean;

  // The minimizer of the mean loss is Link(mean(y)) for every family here;
  // it is finite only for an interior mean.
  const double f_start = Link(spec, mean);
  if (!std::isfinite(f_start)) {
    throw Error(Errc::kDegenerateResponse,
                std::string(spec.name()) +
                    ": response has no finite constant minimizer (mean " +
                    std::to_string(mean) + ")");
  }

  // Newton polish on (sum g, sum h).
  double f = f_start;
  std::vector<double> preds(y.size());
  GradHessBuffer buffer;
  for (int it = 0; it < 50; ++it) {
    std::fill(preds.begin(), preds.end(), f);
    GradHessInto(spec, y, preds, buffer);
    const double step = Sum(buffer.g) / Sum(buffer.h);
    f -= step;
    if (std::abs(step) < 1e-9) break;
  }
  CheckPrediction(spec, f);
  return f;
}

std::optional<std::string_view> NuisanceName(LossKind kind) {
  switch (kind) {
    case LossKind::kMse: return "variance";
    case LossKind::kGammaNegInv:
    case LossKind::kGammaLog: return "shape";
    case LossKind::kNegBinom: return "dispersion";
    case LossKind::kLogloss:
    case LossKind::kPoisson: return std::nullopt;
  }
  return std::nullopt;
}

double Cdf(const LossSpec& spec, double y, double f, std::optional<double> nuisance) {
  CheckPrediction(spec, f);
  if (std::isnan(y)) ThrowDomain(spec, "response", y);
  const double mu = InverseLink(spec, f);
  switch (spec.kind()) {
    case LossKind::kMse: {
      const double variance = RequireNuisance(spec, nuisance);
      if (std::isinf(y)) return y > 0 ? 1.0 : 0.0;
      return boost::math::cdf(boost::math::normal(mu, std::sqrt(variance)), y);
    }
    case LossKind::kLogloss:
      if (y < 0.0) return 0.0;
      if (y < 1.0) return 1.0 - mu;
      return 1.0;
    case LossKind::kGammaNegInv:
    case LossKind::kGammaLog: {
      const double shape = RequireNuisance(spec, nuisance);
      if (y <= 0.0) return 0.0;
      if (std::isinf(y)) return 1.0;
      return boost::math::cdf(boost::math::gamma_distribution<>(shape, mu / shape), y);
    }
    case LossKind::kPoisson:
      if (y < 0.0) return 0.0;
      if (std::isinf(y)) return 1.0;
      return boost::math::cdf(boost::math::poisson(mu), std::floor(y));
    case LossKind::kNegBinom: {
      const double r = RequireNuisance(spec, nuisance);
      if (y < 0.0) return 0.0;
      if (std::isinf(y)) return 1.0;
      return boost::math::cdf(boost::math::negative_binomial(r, r / (r + mu)),
                              std::floor(y));
    }
  }
  return 0.0;
}

double Pmf(const LossSpec& spec, double y, double f, std::optional<double> nuisance) {
  CheckPrediction(spec, f);
  const double mu = InverseLink(spec, f);
  switch (spec.kind()) {
    case LossKind::kLogloss:
      if (y == 0.0) return 1.0 - mu;
      if (y == 1.0) return mu;
      return 0.0;
    case LossKind::kPoisson:
      if (!IsNonNegativeInteger(y)) return 0.0;
      return boost::math::pdf(boost::math::poisson(mu), y);
    case LossKind::kNegBinom: {
      const double r = RequireNuisance(spec, nuisance);
      if (!IsNonNegativeInteger(y)) return 0.0;
      return boost::math::pdf(boost::math::negative_binomial(r, r / (r + mu)), y);
    }
    default:
      throw Error(Errc::kConfig,
                  std::string(spec.name()) + " is continuous; it has no mass function");
  }
}

}  // namespace icboost
