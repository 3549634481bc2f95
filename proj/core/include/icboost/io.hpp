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

// CSV ingestion and model persistence.
//
// Model files are plain text. Every floating-point value is written in its
// shortest round-trip decimal form, so a reloaded model predicts
// bit-identically. Layout (version 1):
//
//   icboost-model 1
//   loss <name>
//   dispersion <r>              (negbinom only)
//   learning_rate <delta>
//   initial_prediction <f0>
//   algorithm <vanilla|global-subset>
//   seed <seed>
//   n_sim <n>
//   features <m>
//   feature <name>              (m lines, optional)
//   trees <K>
//   tree <node count>           (K blocks of preorder records)
//   N <feature> <threshold> <reduction> <optimism>
//   L <weight>
//   end

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "icboost/dataset.hpp"
#include "icboost/ensemble.hpp"

namespace icboost {

inline constexpr int kModelFormatVersion = 1;

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  // Throws Errc::kData if the column does not exist.
  std::size_t ColumnIndex(const std::string& name) const;
};

// Comma-separated, header row, '.' decimal separator. Throws Errc::kData with
// the line and column of ragged rows or non-numeric cells.
CsvTable ReadCsv(std::istream& in, const std::string& source = "<stream>");
CsvTable ReadCsvFile(const std::string& path);

// Splits `table` into features and response. With no target every column is
// a feature and the response is empty.
Dataset ToDataset(const CsvTable& table, const std::optional<std::string>& target);

// Shortest round-trip decimal representation.
std::string FormatDouble(double value);

void SaveModel(const EnsembleModel& model, std::ostream& out);
EnsembleModel LoadModel(std::istream& in);
void SaveModelFile(const EnsembleModel& model, const std::string& path);
EnsembleModel LoadModelFile(const std::string& path);

// iteration,leaves,train_loss,gen_loss
void WriteTrainingLog(std::span<const IterationRecord> log, std::ostream& out);

}  // namespace icboost
