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

#include "icboost/splitting.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "icboost/errors.hpp"
#include "icboost/numeric.hpp"

namespace icboost {
namespace {

void RequirePositiveHessian(const NodeStats& stats) {
  if (!(stats.hess_sum > 0.0)) {
    std::ostringstream os;
    os << "node hessian sum " << stats.hess_sum << " is not positive";
    throw Error(Errc::kConvexity, os.str());
  }
}

// Midpoint of a < b that is guaranteed to route a left and b right.
double Midpoint(double a, double b) {
  const double mid = a + (b - a) / 2.0;
  return (mid < b) ? mid : a;
}

}  // namespace

NodeStats ComputeNodeStats(std::span<const double> g, std::span<const double> h,
                           std::span<const RowIndex> rows, std::size_t n_total) {
  CompensatedSum gs;
  CompensatedSum hs;
  for (RowIndex i : rows) {
    gs.Add(g[i]);
    hs.Add(h[i]);
  }
  return NodeStats{gs.value(), hs.value(), rows.size(), n_total};
}

double NodeLoss(const NodeStats& stats) {
  RequirePositiveHessian(stats);
  return -stats.grad_sum * stats.grad_sum /
         (2.0 * static_cast<double>(stats.n_total) * stats.hess_sum);
}

double LeafWeight(const NodeStats& stats) {
  RequirePositiveHessian(stats);
  return -stats.grad_sum / stats.hess_sum;
}

double SplitReduction(const NodeStats& left, const NodeStats& right,
                      const NodeStats& parent) {
  const double gain = left.grad_sum * left.grad_sum / left.hess_sum +
                      right.grad_sum * right.grad_sum / right.hess_sum -
                      parent.grad_sum * parent.grad_sum / parent.hess_sum;
  const double r = gain / (2.0 * static_cast<double>(parent.n_total));
  return r > 0.0 ? r : 0.0;
}

FeatureScan ScanFeature(std::span<const double> column,
                        std::span<const RowIndex> sorted_rows,
                        std::span<const double> g, std::span<const double> h,
                        const NodeStats& parent) {
  FeatureScan scan;
  const std::size_t n = sorted_rows.size();
  scan.quantiles.n_node = static_cast<std::uint32_t>(n);
  if (n < 2) return scan;
  RequirePositiveHessian(parent);

  CompensatedSum gl;
  CompensatedSum hl;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const RowIndex row = sorted_rows[k];
    gl.Add(g[row]);
    hl.Add(h[row]);
    const double value = column[row];
    const double next = column[sorted_rows[k + 1]];
    if (next == value) continue;

    scan.quantiles.ranks.push_back(static_cast<std::uint32_t>(k + 1));
    NodeStats left{gl.value(), hl.value(), k + 1, parent.n_total};
    NodeStats right{parent.grad_sum - left.grad_sum, parent.hess_sum - left.hess_sum,
                    n - (k + 1), parent.n_total};
    if (!(left.hess_sum > 0.0) || !(right.hess_sum > 0.0)) continue;
    const double r = SplitReduction(left, right, parent);
    if (!scan.has_candidate || r > scan.reduction) {
      scan.has_candidate = true;
      scan.reduction = r;
      scan.threshold = Midpoint(value, next);
      scan.left = left;
      scan.right = right;
    }
  }
  return scan;
}

std::optional<SplitDecision> ChooseSplit(std::vector<FeatureScan> scans) {
  std::optional<std::size_t> best;
  for (std::size_t j = 0; j < scans.size(); ++j) {
    if (!scans[j].has_candidate) continue;
    if (!best || scans[j].reduction > scans[*best].reduction) best = j;
  }
  if (!best) return std::nullopt;

  SplitDecision decision;
  const FeatureScan& winner = scans[*best];
  decision.feature = *best;
  decision.threshold = winner.threshold;
  decision.left = winner.left;
  decision.right = winner.right;
  decision.reduction = winner.reduction;
  decision.split_quantiles.reserve(scans.size());
  for (FeatureScan& scan : scans) {
    decision.split_quantiles.push_back(std::move(scan.quantiles));
  }
  return decision;
}

std::optional<SplitDecision> BestSplit(const FeatureMatrix& x,
                                       std::span<const RowIndex> rows,
                                       std::span<const double> g,
                                       std::span<const double> h, std::size_t n_total) {
  const NodeStats parent = ComputeNodeStats(g, h, rows, n_total);
  std::vector<FeatureScan> scans;
  scans.reserve(x.cols());
  std::vector<RowIndex> sorted(rows.begin(), rows.end());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    const auto column = x.column(j);
    std::sort(sorted.begin(), sorted.end(), [&](RowIndex a, RowIndex b) {
      return column[a] < column[b] || (column[a] == column[b] && a < b);
    });
    scans.push_back(ScanFeature(column, sorted, g, h, parent));
  }
  return ChooseSplit(std::move(scans));
}

SortedColumns::SortedColumns(const FeatureMatrix& x) {
  orders_.resize(x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    const auto column = x.column(j);
    auto& order = orders_[j];
    order.resize(x.rows());
    std::iota(order.begin(), order.end(), RowIndex{0});
    std::sort(order.begin(), order.end(), [&](RowIndex a, RowIndex b) {
      return column[a] < column[b] || (column[a] == column[b] && a < b);
    });
  }
}

}  // namespace icboost
