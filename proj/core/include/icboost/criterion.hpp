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

// Optimism of greedily selected loss reductions.
//
// The loss-reduction optimism of a node t is
//
//   C_R = -C_root * pi_t * E[B],
//
// where C_root is the sandwich estimate of the node-conditional optimism of a
// constant leaf, pi_t the fraction of training rows in t, and B the maximum of
// independent per-feature copies of the CIR process
//
//   dS = 2 (1 - S) dt + 2 sqrt(2 S) dW
//
// observed at the times tau_k = 0.5 log(u_k (1 - eps) / (eps (1 - u_k))) of
// the candidate split quantiles u_k.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <unordered_map>
#include <vector>

#include "icboost/splitting.hpp"

namespace icboost {

using Rng = std::mt19937_64;

struct CirParams {
  static constexpr double kKappa = 2.0;
  static constexpr double kTheta = 1.0;
  static constexpr double kSigma = 2.8284271247461903;  // 2 sqrt(2)
  static constexpr double kEpsilon = 1e-7;
  // 4 kappa theta / sigma^2: degrees of freedom of the transition law.
  static constexpr double kDegreesOfFreedom = 4.0 * kKappa * kTheta / (kSigma * kSigma);
};

struct OptimismEstimate {
  double c_root = 0.0;
  double e_max = 0.0;
  double c_r = 0.0;
};

// Sandwich estimate of the optimism of the constant leaf w_hat fitted to the
// node's rows: sum (g_i + h_i w_hat)^2 / (n_node * H_node).
double RootOptimism(std::span<const double> g, std::span<const double> h,
                    std::span<const RowIndex> rows, double w_hat);
// Same, with g and h already restricted to the node.
double RootOptimism(std::span<const double> g_node, std::span<const double> h_node,
                    double w_hat);

// -c_root * pi * e_max.
double LossReductionOptimism(double c_root, double pi, double e_max);

// CIR time of the split quantile u; u is clamped to [eps, 1 - eps].
double CirTime(double u, double epsilon = CirParams::kEpsilon);

// Draw from the stationary law Gamma(shape 0.5, scale 2).
double CirStationaryDraw(Rng& rng);

// Exact transition S(t + dt) | S(t) = s, a scaled noncentral chi-square.
double CirStepExact(double s, double dt, Rng& rng);

// Monte Carlo estimator of E[max_j max_k S_j(tau_k)].
//
// Each distinct quantile grid is simulated n_sim times with exact transitions
// from a stationary start; the sorted per-grid maxima are cached for the
// lifetime of the estimator. Features are combined under independence through
// the product of the per-grid empirical distribution functions, so
// E[max] = sum_x x * dP(x) with P(x) = prod_j F_j(x).
//
// Every grid's random stream is seeded from (seed, grid contents), making the
// result independent of the order in which nodes are evaluated.
class MaxCirEstimator {
 public:
  explicit MaxCirEstimator(std::size_t n_sim = 1000, std::uint64_t seed = 1);

  // One entry per feature; features without candidates are ignored. Throws
  // Errc::kConfig when no feature has a candidate.
  double ExpectedMax(std::span<const SplitQuantiles> features);
  // Raw quantile vectors, one per feature, entries in (0, 1).
  double ExpectedMax(std::span<const std::vector<double>> quantiles);

  std::size_t n_sim() const { return n_sim_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t cached_grids() const { return cache_.size(); }

 private:
  struct GridKey {
    std::uint64_t hash_a;
    std::uint64_t hash_b;
    std::size_t size;
    bool operator==(const GridKey&) const = default;
  };
  struct GridKeyHash {
    std::size_t operator()(const GridKey& k) const { return k.hash_a; }
  };

  // `u` is sorted, deduplicated and clamped.
  const std::vector<double>& SortedMaxima(const std::vector<double>& u);
  double Combine(std::span<const std::vector<double>* const> grids) const;

  std::size_t n_sim_;
  std::uint64_t seed_;
  std::unordered_map<GridKey, std::vector<double>, GridKeyHash> cache_;
};

// One-shot convenience wrapper around MaxCirEstimator.
double ExpectedMaxCir(std::span<const std::vector<double>> split_quantiles,
                      std::size_t n_sim, std::uint64_t seed);

}  // namespace icboost
