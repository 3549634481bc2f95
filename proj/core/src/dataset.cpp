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

#include "icboost/dataset.hpp"

#include <string>

#include "icboost/errors.hpp"

namespace icboost {

FeatureMatrix FeatureMatrix::FromColumns(const std::vector<std::vector<double>>& columns) {
  const std::size_t cols = columns.size();
  const std::size_t rows = cols == 0 ? 0 : columns.front().size();
  FeatureMatrix out(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    if (columns[j].size() != rows) {
      throw Error(Errc::kData, "column " + std::to_string(j) + " has " +
                                   std::to_string(columns[j].size()) + " rows, expected " +
                                   std::to_string(rows));
    }
    std::copy(columns[j].begin(), columns[j].end(), out.column(j).begin());
  }
  return out;
}

FeatureMatrix FeatureMatrix::FromRows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  const std::size_t cols = n == 0 ? 0 : rows.front().size();
  FeatureMatrix out(n, cols);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != cols) {
      throw Error(Errc::kData, "row " + std::to_string(i) + " has " +
                                   std::to_string(rows[i].size()) + " values, expected " +
                                   std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) out.at(i, j) = rows[i][j];
  }
  return out;
}

void FeatureMatrix::CopyRow(std::size_t row, std::vector<double>& out) const {
  out.resize(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out[j] = values_[j * rows_ + row];
}

void Dataset::Validate() const {
  if (y.size() != x.rows()) {
    throw Error(Errc::kData, "response has " + std::to_string(y.size()) +
                                 " rows but the feature matrix has " +
                                 std::to_string(x.rows()));
  }
  if (!feature_names.empty() && feature_names.size() != x.cols()) {
    throw Error(Errc::kData, "feature name count does not match the column count");
  }
}

}  // namespace icboost
