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

#include "icboost/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "icboost/errors.hpp"

namespace icboost {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(Trim(line.substr(start)));
      break;
    }
    fields.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

std::optional<double> ParseDouble(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

// Line-oriented reader for the model format.
class ModelReader {
 public:
  explicit ModelReader(std::istream& in) : in_(in) {}

  std::vector<std::string> NextTokens() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_number_;
      std::istringstream ss(line);
      std::vector<std::string> tokens;
      for (std::string t; ss >> t;) tokens.push_back(t);
      if (!tokens.empty()) return tokens;
    }
    Fail("unexpected end of model file");
  }

  // Returns the rest of the line after `key`.
  std::string Expect(const std::string& key) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_number_;
      std::string_view view = Trim(line);
      if (view.empty()) continue;
      if (view.substr(0, key.size()) != key ||
          (view.size() > key.size() && view[key.size()] != ' ')) {
        Fail("expected '" + key + "'");
      }
      return std::string(Trim(view.substr(key.size())));
    }
    Fail("unexpected end of model file, expected '" + key + "'");
  }

  double Number(const std::string& text) {
    const auto value = ParseDouble(text);
    if (!value) Fail("'" + text + "' is not a number");
    return *value;
  }

  std::size_t Count(const std::string& text) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      Fail("'" + text + "' is not a count");
    }
    return value;
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw Error(Errc::kData, "model file line " + std::to_string(line_number_) + ": " + message);
  }

 private:
  std::istream& in_;
  std::size_t line_number_ = 0;
};

}  // namespace

std::size_t CsvTable::ColumnIndex(const std::string& name) const {
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == name) return j;
  }
  throw Error(Errc::kData, "column '" + name + "' not found in the CSV header");
}

CsvTable ReadCsv(std::istream& in, const std::string& source) {
  CsvTable table;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!Trim(line).empty()) break;
  }
  if (Trim(line).empty()) throw Error(Errc::kData, source + ": missing header row");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  for (auto field : SplitFields(line)) {
    std::string name(field);
    if (name.size() >= 2 && name.front() == '"' && name.back() == '"') {
      name = name.substr(1, name.size() - 2);
    }
    table.header.push_back(std::move(name));
  }
  table.columns.resize(table.header.size());

  while (std::getline(in, line)) {
    ++line_number;
    if (Trim(line).empty()) continue;
    const auto fields = SplitFields(line);
    if (fields.size() != table.header.size()) {
      throw Error(Errc::kData, source + ": line " + std::to_string(line_number) + " has " +
                                   std::to_string(fields.size()) + " fields, expected " +
                                   std::to_string(table.header.size()));
    }
    for (std::size_t j = 0; j < fields.size(); ++j) {
      const auto value = ParseDouble(fields[j]);
      if (!value || !std::isfinite(*value)) {
        throw Error(Errc::kData, source + ": line " + std::to_string(line_number) +
                                     ", column " + std::to_string(j + 1) + " ('" +
                                     table.header[j] + "'): '" + std::string(fields[j]) +
                                     "' is not a finite number");
      }
      table.columns[j].push_back(*value);
    }
  }
  return table;
}

CsvTable ReadCsvFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIo, "cannot open '" + path + "' for reading");
  return ReadCsv(in, path);
}

Dataset ToDataset(const CsvTable& table, const std::optional<std::string>& target) {
  Dataset data;
  std::optional<std::size_t> target_index;
  if (target) target_index = table.ColumnIndex(*target);
  std::vector<std::vector<double>> features;
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    if (target_index && j == *target_index) continue;
    features.push_back(table.columns[j]);
    data.feature_names.push_back(table.header[j]);
  }
  data.x = FeatureMatrix::FromColumns(features);
  if (features.empty()) data.x = FeatureMatrix(table.rows(), 0);
  if (target_index) data.y = table.columns[*target_index];
  return data;
}

std::string FormatDouble(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

void SaveModel(const EnsembleModel& model, std::ostream& out) {
  out << "icboost-model " << kModelFormatVersion << '\n';
  out << "loss " << model.loss.name() << '\n';
  if (model.loss.kind() == LossKind::kNegBinom) {
    out << "dispersion " << FormatDouble(model.loss.dispersion()) << '\n';
  }
  out << "learning_rate " << FormatDouble(model.learning_rate) << '\n';
  out << "initial_prediction " << FormatDouble(model.initial_prediction) << '\n';
  out << "algorithm " << AlgorithmName(model.algorithm) << '\n';
  out << "seed " << model.seed << '\n';
  out << "n_sim " << model.n_sim << '\n';
  out << "features " << model.n_features << '\n';
  for (const std::string& name : model.feature_names) out << "feature " << name << '\n';
  out << "trees " << model.trees.size() << '\n';
  for (const Tree& tree : model.trees) {
    out << "tree " << tree.nodes().size() << '\n';
    for (const TreeNode& node : tree.nodes()) {
      if (node.is_leaf) {
        out << "L " << FormatDouble(node.weight) << '\n';
      } else {
        out << "N " << node.feature << ' ' << FormatDouble(node.threshold) << ' '
            << FormatDouble(node.reduction) << ' ' << FormatDouble(node.optimism) << '\n';
      }
    }
  }
  out << "end\n";
}

EnsembleModel LoadModel(std::istream& in) {
  ModelReader reader(in);
  const auto magic = reader.NextTokens();
  if (magic.size() != 2 || magic[0] != "icboost-model") {
    reader.Fail("not an icboost model file");
  }
  if (magic[1] != std::to_string(kModelFormatVersion)) {
    throw Error(Errc::kUnsupportedVersion,
                "unsupported model format version '" + magic[1] + "' (this build reads " +
                    std::to_string(kModelFormatVersion) + ")");
  }

  EnsembleModel model;
  const std::string loss_name = reader.Expect("loss");
  std::optional<double> dispersion;
  if (loss_name == "negbinom") dispersion = reader.Number(reader.Expect("dispersion"));
  model.loss = LossSpec::Parse(loss_name, dispersion);
  model.learning_rate = reader.Number(reader.Expect("learning_rate"));
  model.initial_prediction = reader.Number(reader.Expect("initial_prediction"));
  model.algorithm = ParseAlgorithm(reader.Expect("algorithm"));
  model.seed = reader.Count(reader.Expect("seed"));
  model.n_sim = reader.Count(reader.Expect("n_sim"));
  model.n_features = reader.Count(reader.Expect("features"));

  std::vector<std::string> tokens = reader.NextTokens();
  while (!tokens.empty() && tokens[0] == "feature") {
    std::string name;
    for (std::size_t t = 1; t < tokens.size(); ++t) name += (t > 1 ? " " : "") + tokens[t];
    model.feature_names.push_back(name);
    tokens = reader.NextTokens();
  }
  if (!model.feature_names.empty() && model.feature_names.size() != model.n_features) {
    reader.Fail("feature name count does not match 'features'");
  }
  if (tokens.size() != 2 || tokens[0] != "trees") reader.Fail("expected 'trees'");
  const std::size_t n_trees = reader.Count(tokens[1]);
  model.trees.reserve(n_trees);
  for (std::size_t k = 0; k < n_trees; ++k) {
    const auto header = reader.NextTokens();
    if (header.size() != 2 || header[0] != "tree") reader.Fail("expected 'tree'");
    const std::size_t n_nodes = reader.Count(header[1]);
    if (n_nodes == 0) reader.Fail("empty tree");
    std::vector<TreeNode> nodes(n_nodes);
    // Preorder: children are assigned with a stack of nodes awaiting them.
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < n_nodes; ++i) {
      const auto record = reader.NextTokens();
      if (i > 0) {
        if (open.empty()) reader.Fail("tree record without a parent");
        TreeNode& parent = nodes[open.back()];
        if (parent.left == 0) {
          parent.left = i;
        } else {
          parent.right = i;
          open.pop_back();
        }
      }
      if (record[0] == "L" && record.size() == 2) {
        nodes[i].is_leaf = true;
        nodes[i].weight = reader.Number(record[1]);
      } else if (record[0] == "N" && record.size() == 5) {
        nodes[i].is_leaf = false;
        nodes[i].feature = reader.Count(record[1]);
        nodes[i].threshold = reader.Number(record[2]);
        nodes[i].reduction = reader.Number(record[3]);
        nodes[i].optimism = reader.Number(record[4]);
        if (nodes[i].feature >= model.n_features) reader.Fail("split feature out of range");
        open.push_back(i);
      } else {
        reader.Fail("malformed tree record");
      }
    }
    if (!open.empty()) reader.Fail("truncated tree");
    model.trees.emplace_back(std::move(nodes));
  }
  const auto end = reader.NextTokens();
  if (end.size() != 1 || end[0] != "end") reader.Fail("expected 'end'");
  return model;
}

void SaveModelFile(const EnsembleModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kIo, "cannot open '" + path + "' for writing");
  SaveModel(model, out);
  if (!out) throw Error(Errc::kIo, "failed writing '" + path + "'");
}

EnsembleModel LoadModelFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open '" + path + "' for reading");
  return LoadModel(in);
}

void WriteTrainingLog(std::span<const IterationRecord> log, std::ostream& out) {
  out << "iteration,leaves,train_loss,gen_loss\n";
  for (const IterationRecord& r : log) {
    out << r.iteration << ',' << r.leaves << ',' << FormatDouble(r.train_loss) << ','
        << FormatDouble(r.gen_loss) << '\n';
  }
}

}  // namespace icboost
