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

// Seeded synthetic datasets shared by the CLI, the tests and the benchmarks.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "icboost/dataset.hpp"

namespace icboost::synth {

// x ~ U(0, 5), y ~ N(x, 1). Extra features are U(0, 5) noise.
Dataset LinearGaussian(std::size_t n, std::uint64_t seed, std::size_t noise_features = 0);

// y ~ N(0, 1) independent of m U(0, 1) features.
Dataset PureNoise(std::size_t n, std::size_t m, std::uint64_t seed);

// Binary response with P(y = 1) = sigmoid(x_0 - x_1 + x_0 x_2) over m >= 3
// standard normal features; the remaining features are noise.
Dataset Classification(std::size_t n, std::size_t m, std::uint64_t seed);

// y = 1{x_0 > 0} 1{x_1 > 0} + N(0, 0.1^2), x ~ N(0, 1)^2.
Dataset Interaction(std::size_t n, std::uint64_t seed);

// Dispatches on "linear", "noise" or "classification". Throws Errc::kConfig
// for other names.
Dataset Generate(std::string_view name, std::size_t n, std::size_t m, std::uint64_t seed);

}  // namespace icboost::synth
