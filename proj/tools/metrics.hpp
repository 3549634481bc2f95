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

#pragma once

#include <span>

namespace icboost {

// True when every entry is 0 or 1 and both classes occur.
bool IsBinaryResponse(std::span<const double> y);

// Area under the ROC curve of `score` for the binary labels `y`: the
// trapezoidal area, computed as the Mann-Whitney statistic with tied scores
// counted one half. Throws Errc::kConfig unless IsBinaryResponse(y).
double Auc(std::span<const double> y, std::span<const double> score);

}  // namespace icboost
