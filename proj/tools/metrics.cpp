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

#include "metrics.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "icboost/errors.hpp"

namespace icboost {

bool IsBinaryResponse(std::span<const double> y) {
  bool zero = false;
  bool one = false;
  for (double v : y) {
    if (v == 0.0) {
      zero = true;
    } else if (v == 1.0) {
      one = true;
    } else {
      return false;
    }
  }
  return zero && one;
}

double Auc(std::span<const double> y, std::span<const double> score) {
  if (y.size() != score.size()) throw Error(Errc::kData, "labels and scores differ in length");
  if (!IsBinaryResponse(y)) {
    throw Error(Errc::kConfig, "AUC needs a binary 0/1 response with both classes present");
  }
  std::vector<std::size_t> order(y.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });

  // Midranks over tie groups.
  double positive_rank_sum = 0.0;
  double positives = 0.0;
  for (std::size_t start = 0; start < order.size();) {
    std::size_t end = start;
    while (end < order.size() && score[order[end]] == score[order[start]]) ++end;
    const double midrank = 0.5 * static_cast<double>(start + 1 + end);
    for (std::size_t k = start; k < end; ++k) {
      if (y[order[k]] == 1.0) {
        positive_rank_sum += midrank;
        positives += 1.0;
      }
    }
    start = end;
  }
  const double negatives = static_cast<double>(y.size()) - positives;
  return (positive_rank_sum - positives * (positives + 1.0) / 2.0) / (positives * negatives);
}

}  // namespace icboost
