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

#include "icboost/criterion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <boost/random/normal_distribution.hpp>

#include "icboost/errors.hpp"
#include "icboost/numeric.hpp"

namespace icboost {
namespace {

// sigma^2 / (4 kappa) with sigma^2 = 8.
constexpr double kTransitionScale = 8.0 / (4.0 * CirParams::kKappa);

// The transition law has 4 kappa theta / sigma^2 = 1 degree of freedom, so
// c * chi'^2(1, lambda) = (sqrt(c) Z + sqrt(c lambda))^2.
static_assert(4.0 * CirParams::kKappa * CirParams::kTheta / 8.0 == 1.0);

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// xoshiro256++. The path simulation draws one normal per grid point and
// replicate; this engine roughly halves its cost against mt19937_64.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;
  explicit Xoshiro256(std::uint64_t seed) {
    for (auto& word : state_) {
      seed = SplitMix64(seed);
      word = seed;
    }
  }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() {
    const result_type out = std::rotl(state_[0] + state_[3], 23) + state_[0];
    const result_type t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return out;
  }

 private:
  result_type state_[4];
};

std::vector<double> ToGrid(const SplitQuantiles& q) {
  std::vector<double> u(q.ranks.size());
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = q.u(k);
  return u;
}

void NormalizeGrid(std::vector<double>& u) {
  for (double& v : u) {
    if (!(v > 0.0 && v < 1.0)) {
      throw Error(Errc::kConfig, "split quantiles must lie in (0, 1)");
    }
    v = std::clamp(v, CirParams::kEpsilon, 1.0 - CirParams::kEpsilon);
  }
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
}

}  // namespace

double RootOptimism(std::span<const double> g, std::span<const double> h,
                    std::span<const RowIndex> rows, double w_hat) {
  CompensatedSum score_sq;
  CompensatedSum hess;
  for (RowIndex i : rows) {
    const double score = g[i] + h[i] * w_hat;
    score_sq.Add(score * score);
    hess.Add(h[i]);
  }
  if (!(hess.value() > 0.0)) {
    throw Error(Errc::kConvexity, "node hessian sum is not positive");
  }
  return score_sq.value() / (static_cast<double>(rows.size()) * hess.value());
}

double RootOptimism(std::span<const double> g_node, std::span<const double> h_node,
                    double w_hat) {
  CompensatedSum score_sq;
  CompensatedSum hess;
  for (std::size_t i = 0; i < g_node.size(); ++i) {
    const double score = g_node[i] + h_node[i] * w_hat;
    score_sq.Add(score * score);
    hess.Add(h_node[i]);
  }
  if (!(hess.value() > 0.0)) {
    throw Error(Errc::kConvexity, "node hessian sum is not positive");
  }
  return score_sq.value() / (static_cast<double>(g_node.size()) * hess.value());
}

double LossReductionOptimism(double c_root, double pi, double e_max) {
  return -c_root * pi * e_max;
}

double CirTime(double u, double epsilon) {
  u = std::clamp(u, epsilon, 1.0 - epsilon);
  return 0.5 * std::log(u * (1.0 - epsilon) / (epsilon * (1.0 - u)));
}

double CirStationaryDraw(Rng& rng) {
  boost::random::normal_distribution<double> normal;
  const double z = normal(rng);
  return z * z;
}

double CirStepExact(double s, double dt, Rng& rng) {
  const double decay = std::exp(-CirParams::kKappa * dt);
  const double c = kTransitionScale * (1.0 - decay);
  const double mean_part = std::sqrt(std::max(s, 0.0) * decay);  // sqrt(c * lambda)
  boost::random::normal_distribution<double> normal;
  const double root = std::sqrt(c) * normal(rng) + mean_part;
  return root * root;
}

MaxCirEstimator::MaxCirEstimator(std::size_t n_sim, std::uint64_t seed)
    : n_sim_(n_sim), seed_(seed) {
  if (n_sim_ == 0) throw Error(Errc::kConfig, "n_sim must be at least 1");
}

const std::vector<double>& MaxCirEstimator::SortedMaxima(const std::vector<double>& u) {
  GridKey key{0x6a09e667f3bcc908ULL, 0xbb67ae8584caa73bULL, u.size()};
  for (double v : u) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    key.hash_a = SplitMix64(key.hash_a ^ bits);
    key.hash_b = SplitMix64(key.hash_b + bits * 0x2545f4914f6cdd1dULL);
  }
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  // Square-root transition coefficients between consecutive times:
  // sqrt(S') = |a_k Z + b_k sqrt(S)|.
  const std::size_t points = u.size();
  std::vector<double> a(points, 0.0);
  std::vector<double> b(points, 0.0);
  double previous = CirTime(u[0]);
  for (std::size_t k = 1; k < points; ++k) {
    const double tau = CirTime(u[k]);
    const double dt = tau - previous;
    previous = tau;
    const double decay = std::exp(-CirParams::kKappa * dt);
    a[k] = std::sqrt(kTransitionScale * (1.0 - decay));
    b[k] = std::sqrt(decay);
  }

  Xoshiro256 rng(seed_ ^ key.hash_a);
  boost::random::normal_distribution<double> normal;
  std::vector<double> maxima(n_sim_);
  for (std::size_t r = 0; r < n_sim_; ++r) {
    double y = std::abs(normal(rng));
    double best = y;
    for (std::size_t k = 1; k < points; ++k) {
      y = std::abs(a[k] * normal(rng) + b[k] * y);
      best = std::max(best, y);
    }
    maxima[r] = best * best;
  }
  std::sort(maxima.begin(), maxima.end());
  return cache_.emplace(key, std::move(maxima)).first->second;
}

double MaxCirEstimator::Combine(std::span<const std::vector<double>* const> grids) const {
  // Distinct grids with multiplicities.
  std::vector<const std::vector<double>*> distinct;
  std::vector<int> multiplicity;
  for (const auto* g : grids) {
    auto pos = std::find(distinct.begin(), distinct.end(), g);
    if (pos == distinct.end()) {
      distinct.push_back(g);
      multiplicity.push_back(1);
    } else {
      ++multiplicity[pos - distinct.begin()];
    }
  }

  const double n = static_cast<double>(n_sim_);
  std::vector<std::size_t> cursor(distinct.size(), 0);
  CompensatedSum expectation;
  double p_prev = 0.0;
  while (true) {
    double x = 0.0;
    bool any = false;
    for (std::size_t j = 0; j < distinct.size(); ++j) {
      if (cursor[j] < distinct[j]->size()) {
        const double v = (*distinct[j])[cursor[j]];
        if (!any || v < x) x = v;
        any = true;
      }
    }
    if (!any) break;
    double p = 1.0;
    for (std::size_t j = 0; j < distinct.size(); ++j) {
      const auto& samples = *distinct[j];
      while (cursor[j] < samples.size() && samples[cursor[j]] == x) ++cursor[j];
      p *= std::pow(static_cast<double>(cursor[j]) / n, multiplicity[j]);
    }
    expectation.Add(x * (p - p_prev));
    p_prev = p;
  }
  return expectation.value();
}

double MaxCirEstimator::ExpectedMax(std::span<const SplitQuantiles> features) {
  std::vector<const std::vector<double>*> grids;
  for (const SplitQuantiles& q : features) {
    if (q.empty()) continue;
    std::vector<double> u = ToGrid(q);
    NormalizeGrid(u);
    grids.push_back(&SortedMaxima(u));
  }
  if (grids.empty()) throw Error(Errc::kConfig, "no split quantiles to simulate");
  return Combine(grids);
}

double MaxCirEstimator::ExpectedMax(std::span<const std::vector<double>> quantiles) {
  std::vector<const std::vector<double>*> grids;
  for (const auto& q : quantiles) {
    if (q.empty()) continue;
    std::vector<double> u = q;
    NormalizeGrid(u);
    grids.push_back(&SortedMaxima(u));
  }
  if (grids.empty()) throw Error(Errc::kConfig, "no split quantiles to simulate");
  return Combine(grids);
}

double ExpectedMaxCir(std::span<const std::vector<double>> split_quantiles,
                      std::size_t n_sim, std::uint64_t seed) {
  MaxCirEstimator estimator(n_sim, seed);
  return estimator.ExpectedMax(split_quantiles);
}

}  // namespace icboost
