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

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "icboost/criterion.hpp"
#include "icboost/ensemble.hpp"
#include "icboost/losses.hpp"
#include "icboost/splitting.hpp"
#include "synthetic.hpp"

namespace icboost {
namespace {

std::vector<RowIndex> AllRows(std::size_t n) {
  std::vector<RowIndex> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = static_cast<RowIndex>(i);
  return rows;
}

void BM_BestSplitRoot(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Dataset data = synth::LinearGaussian(n, 1, 4);
  const LossSpec mse(LossKind::kMse);
  const std::vector<double> f(n, InitialPrediction(mse, data.y));
  const auto d = GradHess(mse, data.y, f);
  const auto rows = AllRows(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(BestSplit(data.x, rows, d.g, d.h, n));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * data.cols()));
}
BENCHMARK(BM_BestSplitRoot)->Arg(1000)->Arg(10000)->Arg(100000);

// Uncached: a fresh estimator for every call.
void BM_ExpectedMaxSimulation(benchmark::State& state) {
  const auto candidates = static_cast<std::size_t>(state.range(0));
  std::vector<std::vector<double>> grid(1);
  for (std::size_t k = 1; k <= candidates; ++k) {
    grid[0].push_back(static_cast<double>(k) / static_cast<double>(candidates + 1));
  }
  std::uint64_t seed = 0;
  for (auto _ : state) {
    MaxCirEstimator estimator(1000, ++seed);
    benchmark::DoNotOptimize(estimator.ExpectedMax(grid));
  }
}
BENCHMARK(BM_ExpectedMaxSimulation)->Arg(10)->Arg(100)->Arg(1000);

void BM_CirStepExact(benchmark::State& state) {
  Rng rng(1);
  double s = 1.0;
  for (auto _ : state) {
    s = CirStepExact(s, 0.05, rng);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_CirStepExact);

void BM_Train(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto algorithm = static_cast<Algorithm>(state.range(1));
  const Dataset data = synth::LinearGaussian(n, 1);
  TrainConfig config;
  config.learning_rate = 0.1;
  config.algorithm = algorithm;
  std::size_t trees = 0;
  for (auto _ : state) {
    const EnsembleModel model = Train(data, LossSpec(LossKind::kMse), config);
    trees = model.trees.size();
  }
  state.counters["trees"] = static_cast<double>(trees);
}
BENCHMARK(BM_Train)
    ->Args({1000, static_cast<int>(Algorithm::kVanilla)})
    ->Args({1000, static_cast<int>(Algorithm::kGlobalSubset)})
    ->Args({10000, static_cast<int>(Algorithm::kVanilla)})
    ->Args({10000, static_cast<int>(Algorithm::kGlobalSubset)})
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace icboost

BENCHMARK_MAIN();
