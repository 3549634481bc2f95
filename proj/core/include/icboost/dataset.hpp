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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace icboost {

// Column-major numeric feature matrix.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

  // Builds from a list of equally sized columns.
  static FeatureMatrix FromColumns(const std::vector<std::vector<double>>& columns);
  // Builds from a list of equally sized rows.
  static FeatureMatrix FromRows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::span<const double> column(std::size_t j) const {
    return {values_.data() + j * rows_, rows_};
  }
  std::span<double> column(std::size_t j) {
    return {values_.data() + j * rows_, rows_};
  }

  double at(std::size_t row, std::size_t col) const {
    return values_[col * rows_ + row];
  }
  double& at(std::size_t row, std::size_t col) {
    return values_[col * rows_ + row];
  }

  // Copies one row into `out` (resized to cols()).
  void CopyRow(std::size_t row, std::vector<double>& out) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

// Features plus response; the training substrate.
struct Dataset {
  FeatureMatrix x;
  std::vector<double> y;
  std::vector<std::string> feature_names;

  std::size_t rows() const { return x.rows(); }
  std::size_t cols() const { return x.cols(); }

  // Throws Errc::kData when shapes disagree.
  void Validate() const;
};

}  // namespace icboost
