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

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "icboost/ensemble.hpp"
#include "icboost/errors.hpp"
#include "icboost/io.hpp"
#include "icboost/losses.hpp"
#include "icboost/validation.hpp"
#include "metrics.hpp"
#include "synthetic.hpp"

namespace icboost::cli {
namespace {

std::ofstream OpenOutput(const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(Errc::kIo, "cannot open '" + path + "' for writing");
  return file;
}

void FinishOutput(std::ofstream& file, const std::string& path) {
  file.flush();
  if (!file) throw Error(Errc::kIo, "failed writing '" + path + "'");
}

std::string Format(const char* pattern, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), pattern, value);
  return buffer;
}

const char* FamilyName(LossKind kind) {
  switch (kind) {
    case LossKind::kMse: return "Gaussian";
    case LossKind::kLogloss: return "Bernoulli";
    case LossKind::kGammaNegInv:
    case LossKind::kGammaLog: return "Gamma";
    case LossKind::kPoisson: return "Poisson";
    case LossKind::kNegBinom: return "Negative binomial";
  }
  return "unknown";
}

LossSpec MakeLoss(const std::string& name, const CLI::Option* dispersion_opt,
                  double dispersion) {
  const bool negbinom = name == "negbinom";
  const bool given = dispersion_opt->count() > 0;
  if (negbinom && !given) {
    throw Error(Errc::kConfig, "loss negbinom requires --dispersion");
  }
  if (!negbinom && given) {
    throw Error(Errc::kConfig, "--dispersion applies to the negbinom loss only");
  }
  return LossSpec::Parse(name, given ? std::optional<double>(dispersion) : std::nullopt);
}

// ---- train ---------------------------------------------------------------

struct TrainArgs {
  std::string loss;
  std::string data;
  std::string target;
  std::string algorithm = "global-subset";
  std::string out;
  std::string log;
  double learning_rate = 0.01;
  double dispersion = 0.0;
  std::size_t verbose = 0;
  std::uint64_t seed = 1;
  std::size_t nsim = 1000;
  std::size_t max_iterations = 30000;
  CLI::Option* dispersion_opt = nullptr;
};

int RunTrain(const TrainArgs& args, std::ostream& out, std::ostream& err) {
  const LossSpec loss = MakeLoss(args.loss, args.dispersion_opt, args.dispersion);
  TrainConfig config;
  config.learning_rate = args.learning_rate;
  config.algorithm = ParseAlgorithm(args.algorithm);
  config.verbose = args.verbose;
  config.seed = args.seed;
  config.n_sim = args.nsim;
  config.max_iterations = args.max_iterations;
  config.Validate();

  const Dataset data = ToDataset(ReadCsvFile(args.data), args.target);
  const EnsembleModel model = Train(data, loss, config, &out);

  std::ofstream model_file = OpenOutput(args.out);
  SaveModel(model, model_file);
  FinishOutput(model_file, args.out);

  const std::string log_path = args.log.empty() ? args.out + ".log.csv" : args.log;
  std::ofstream log_file = OpenOutput(log_path);
  WriteTrainingLog(model.log, log_file);
  FinishOutput(log_file, log_path);

  for (const auto& warning : model.summary.warnings) err << "warning: " << warning << '\n';
  std::size_t leaves = 0;
  for (const Tree& tree : model.trees) leaves += tree.num_leaves();
  out << "trees: " << model.trees.size() << "  |  leaves: " << leaves << "  |  stop: "
      << (model.summary.stop_reason == StopReason::kCriterion ? "criterion" : "iteration cap")
      << '\n';
  return 0;
}

// ---- predict -------------------------------------------------------------

struct PredictArgs {
  std::string model;
  std::string data;
  std::string target;
  std::string out;
  bool response_scale = false;
};

int RunPredict(const PredictArgs& args, std::ostream& out) {
  const EnsembleModel model = LoadModelFile(args.model);
  const CsvTable table = ReadCsvFile(args.data);
  const Dataset data =
      ToDataset(table, args.target.empty() ? std::nullopt : std::optional(args.target));
  if (data.cols() != model.n_features) {
    throw Error(Errc::kData, "model expects " + std::to_string(model.n_features) +
                                 " feature columns, '" + args.data + "' has " +
                                 std::to_string(data.cols()));
  }
  const std::vector<double> f =
      args.response_scale ? model.PredictResponse(data.x) : model.Predict(data.x);

  std::ofstream file;
  std::ostream* sink = &out;
  if (!args.out.empty()) {
    file = OpenOutput(args.out);
    sink = &file;
  }
  *sink << "prediction\n";
  for (double v : f) *sink << FormatDouble(v) << '\n';
  if (!args.out.empty()) FinishOutput(file, args.out);
  return 0;
}

// ---- validate ------------------------------------------------------------

struct ValidateArgs {
  std::string model;
  std::string data;
  std::string target;
  std::string histogram;
  std::string gnuplot;
  std::uint64_t seed = 1;
  std::size_t bins = 20;
};

void WriteGnuplotScript(const std::string& path, const std::string& histogram,
                        std::size_t bins) {
  std::ofstream file = OpenOutput(path);
  file << "set datafile separator ','\n"
       << "set title 'Transformed responses'\n"
       << "set xlabel 'u'\nset ylabel 'count'\n"
       << "set xrange [0:1]\nset yrange [0:*]\n"
       << "set style fill solid 0.5\n"
       << "set boxwidth " << FormatDouble(1.0 / static_cast<double>(bins)) << "\n"
       << "plot '" << histogram << "' using (($1 + $2) / 2):3 skip 1 with boxes notitle\n";
  FinishOutput(file, path);
}

int RunValidate(const ValidateArgs& args, std::ostream& out) {
  if (args.bins < 1) throw Error(Errc::kConfig, "--bins must be at least 1");
  const EnsembleModel model = LoadModelFile(args.model);
  const Dataset data = ToDataset(ReadCsvFile(args.data), args.target);
  if (data.cols() != model.n_features) {
    throw Error(Errc::kData, "model expects " + std::to_string(model.n_features) +
                                 " feature columns, '" + args.data + "' has " +
                                 std::to_string(data.cols()));
  }
  Rng rng(args.seed);
  const KsResult ks = ValidateModel(model, data, rng);

  out << FamilyName(model.loss.kind()) << " (" << model.loss.name() << ")\n"
      << "One-sample Kolmogorov-Smirnov test\n"
      << "data:  u\n"
      << "D = " << Format("%.6g", ks.statistic) << ", p-value = " << Format("%.6g", ks.p_value)
      << '\n'
      << "alternative hypothesis: two-sided\n";
  if (ks.nuisance) {
    out << ks.nuisance_name << " = " << Format("%.6g", *ks.nuisance) << '\n';
  }

  const std::string histogram = args.histogram.empty() ? args.model + ".ks.csv" : args.histogram;
  const std::vector<std::size_t> counts = UniformHistogram(ks.u, args.bins);
  std::ofstream file = OpenOutput(histogram);
  file << "lower,upper,count\n";
  const double width = 1.0 / static_cast<double>(args.bins);
  for (std::size_t b = 0; b < counts.size(); ++b) {
    file << FormatDouble(static_cast<double>(b) * width) << ','
         << FormatDouble(b + 1 == counts.size() ? 1.0 : static_cast<double>(b + 1) * width)
         << ',' << counts[b] << '\n';
  }
  FinishOutput(file, histogram);
  if (!args.gnuplot.empty()) WriteGnuplotScript(args.gnuplot, histogram, args.bins);
  return 0;
}

// ---- importance ----------------------------------------------------------

struct ImportanceArgs {
  std::string model;
  std::string names;
  std::string out;
};

// One name per line, or a single comma-separated header line.
std::vector<std::string> ReadNames(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw Error(Errc::kIo, "cannot open '" + path + "'");
  std::vector<std::string> names;
  std::string line;
  while (std::getline(file, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::stringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) names.push_back(field);
  }
  return names;
}

int RunImportance(const ImportanceArgs& args, std::ostream& out, std::ostream& err) {
  const EnsembleModel model = LoadModelFile(args.model);
  std::vector<std::string> names = model.feature_names;
  if (!args.names.empty()) names = ReadNames(args.names);
  if (names.size() != model.n_features) {
    if (!args.names.empty()) {
      throw Error(Errc::kData, "names file lists " + std::to_string(names.size()) +
                                   " features, the model has " +
                                   std::to_string(model.n_features));
    }
    names.resize(model.n_features);
    for (std::size_t j = 0; j < names.size(); ++j) names[j] = "x" + std::to_string(j + 1);
  }

  const ImportanceVector importance = FeatureImportance(model);
  for (std::size_t j : importance.floored) {
    err << "note: importance of '" << names[j] << "' was negative and is reported as 0\n";
  }
  std::vector<std::size_t> order(model.n_features);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return importance.share[a] > importance.share[b];
  });

  std::ofstream file;
  std::ostream* sink = &out;
  if (!args.out.empty()) {
    file = OpenOutput(args.out);
    sink = &file;
  }
  *sink << "feature,raw,share\n";
  for (std::size_t j : order) {
    *sink << names[j] << ',' << FormatDouble(importance.raw[j]) << ','
          << FormatDouble(importance.share[j]) << '\n';
  }
  if (!args.out.empty()) FinishOutput(file, args.out);
  return 0;
}

// ---- benchmark -----------------------------------------------------------

struct BenchmarkArgs {
  std::string train;
  std::string test;
  std::string target;
  std::string synthetic;
  std::string loss;
  std::size_t n = 1000;
  std::size_t n_test = 10000;
  std::size_t features = 5;
  std::uint64_t seed = 1;
  double learning_rate = 0.01;
  double dispersion = 0.0;
  std::size_t nsim = 1000;
  std::size_t max_iterations = 30000;
  bool auc = false;
  CLI::Option* dispersion_opt = nullptr;
};

struct BenchmarkRow {
  std::string algorithm;
  double loss = 0.0;
  std::optional<double> auc;
  double seconds = 0.0;
  std::size_t trees = 0;
  std::size_t leaves = 0;
  std::size_t features = 0;
};

int RunBenchmark(const BenchmarkArgs& args, std::ostream& out) {
  Dataset train;
  Dataset test;
  if (!args.synthetic.empty()) {
    if (!args.train.empty() || !args.test.empty()) {
      throw Error(Errc::kConfig, "use either --synthetic or --train/--test, not both");
    }
    train = synth::Generate(args.synthetic, args.n, args.features, args.seed);
    // An independent stream for the test set.
    test = synth::Generate(args.synthetic, args.n_test, args.features,
                           args.seed ^ 0x9e3779b97f4a7c15ULL);
  } else {
    if (args.train.empty() || args.test.empty() || args.target.empty()) {
      throw Error(Errc::kConfig, "benchmark needs --train, --test and --target, or --synthetic");
    }
    train = ToDataset(ReadCsvFile(args.train), args.target);
    test = ToDataset(ReadCsvFile(args.test), args.target);
    if (test.cols() != train.cols()) {
      throw Error(Errc::kData, "training data has " + std::to_string(train.cols()) +
                                   " feature columns, test data has " +
                                   std::to_string(test.cols()));
    }
  }

  std::string loss_name = args.loss;
  if (loss_name.empty()) loss_name = args.synthetic == "classification" ? "logloss" : "mse";
  const LossSpec loss = MakeLoss(loss_name, args.dispersion_opt, args.dispersion);
  const bool want_auc = args.auc || loss.kind() == LossKind::kLogloss;
  if (want_auc && !IsBinaryResponse(test.y)) {
    throw Error(Errc::kConfig, "AUC requested but the test response is not binary");
  }

  std::vector<BenchmarkRow> rows;
  for (Algorithm algorithm : {Algorithm::kVanilla, Algorithm::kGlobalSubset}) {
    TrainConfig config;
    config.learning_rate = args.learning_rate;
    config.algorithm = algorithm;
    config.seed = args.seed;
    config.n_sim = args.nsim;
    config.max_iterations = args.max_iterations;

    const auto start = std::chrono::steady_clock::now();
    const EnsembleModel model = Train(train, loss, config);
    const auto stop = std::chrono::steady_clock::now();

    BenchmarkRow row;
    row.algorithm = std::string(AlgorithmName(algorithm));
    row.seconds = std::chrono::duration<double>(stop - start).count();
    const std::vector<double> f = model.Predict(test.x);
    row.loss = MeanLoss(loss, test.y, f);
    if (want_auc) row.auc = Auc(test.y, f);
    row.trees = model.trees.size();
    std::set<std::size_t> used;
    for (const Tree& tree : model.trees) {
      row.leaves += tree.num_leaves();
      for (const TreeNode& node : tree.nodes()) {
        if (!node.is_leaf) used.insert(node.feature);
      }
    }
    row.features = used.size();
    rows.push_back(row);
  }

  char line[160];
  std::snprintf(line, sizeof(line), "%-14s %10s %8s %10s %8s %9s %10s\n", "Algorithm", "Loss",
                "AUC", "Time", "#trees", "#leaves", "#features");
  out << line;
  for (const BenchmarkRow& row : rows) {
    const std::string auc = row.auc ? Format("%.4f", *row.auc) : "-";
    std::snprintf(line, sizeof(line), "%-14s %10.4f %8s %10.4g %8zu %9zu %10zu\n",
                  row.algorithm.c_str(), row.loss, auc.c_str(), row.seconds, row.trees,
                  row.leaves, row.features);
    out << line;
  }
  return 0;
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gradient tree boosting with information-criterion stopping"};
  app.name("icboost");
  app.require_subcommand(1);

  const std::vector<std::string> kLosses = {"mse",     "logloss",  "gamma::neginv",
                                            "gamma::log", "poisson", "negbinom"};
  const std::vector<std::string> kAlgorithms = {"global-subset", "vanilla"};

  TrainArgs train;
  CLI::App* train_cmd = app.add_subcommand("train", "Fit a model and write it with its log");
  train_cmd->add_option("--loss", train.loss, "Loss function")
      ->required()
      ->check(CLI::IsMember(kLosses));
  train_cmd->add_option("--data", train.data, "Training CSV")->required();
  train_cmd->add_option("--target", train.target, "Response column")->required();
  train_cmd->add_option("--learning-rate", train.learning_rate, "Learning rate in (0, 1]")
      ->capture_default_str();
  train_cmd->add_option("--algorithm", train.algorithm, "Tree growing algorithm")
      ->check(CLI::IsMember(kAlgorithms))
      ->capture_default_str();
  train.dispersion_opt =
      train_cmd->add_option("--dispersion", train.dispersion, "Negbinom dispersion r > 0");
  train_cmd->add_option("--verbose", train.verbose, "Progress line period, 0 is silent")
      ->capture_default_str();
  train_cmd->add_option("--seed", train.seed, "Simulation seed")->capture_default_str();
  train_cmd->add_option("--nsim", train.nsim, "CIR replicates per grid")->capture_default_str();
  train_cmd->add_option("--max-iterations", train.max_iterations, "Safety cap on trees")
      ->capture_default_str();
  train_cmd->add_option("--out", train.out, "Model file to write")->required();
  train_cmd->add_option("--log", train.log, "Training log CSV (default <out>.log.csv)");

  PredictArgs predict;
  CLI::App* predict_cmd = app.add_subcommand("predict", "Predict from a saved model");
  predict_cmd->add_option("--model", predict.model, "Model file")->required();
  predict_cmd->add_option("--data", predict.data, "Feature CSV")->required();
  predict_cmd->add_option("--target", predict.target, "Column to drop before predicting");
  predict_cmd->add_option("--out", predict.out, "Output CSV (default stdout)");
  predict_cmd->add_flag("--response-scale", predict.response_scale,
                        "Apply the inverse link to the predictions");

  ValidateArgs validate;
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "Kolmogorov-Smirnov test of a model on labeled data");
  validate_cmd->add_option("--model", validate.model, "Model file")->required();
  validate_cmd->add_option("--data", validate.data, "Labeled CSV")->required();
  validate_cmd->add_option("--target", validate.target, "Response column")->required();
  validate_cmd->add_option("--seed", validate.seed, "Seed of the discrete transform")
      ->capture_default_str();
  validate_cmd->add_option("--bins", validate.bins, "Histogram bins")->capture_default_str();
  validate_cmd->add_option("--histogram", validate.histogram,
                           "Histogram CSV of u (default <model>.ks.csv)");
  validate_cmd->add_option("--gnuplot", validate.gnuplot, "Also write a gnuplot script");

  ImportanceArgs importance;
  CLI::App* importance_cmd =
      app.add_subcommand("importance", "Generalization-loss feature importance");
  importance_cmd->add_option("--model", importance.model, "Model file")->required();
  importance_cmd->add_option("--names", importance.names, "Feature names file");
  importance_cmd->add_option("--out", importance.out, "Output CSV (default stdout)");

  BenchmarkArgs bench;
  CLI::App* bench_cmd =
      app.add_subcommand("benchmark", "Compare the vanilla and global-subset algorithms");
  bench_cmd->add_option("--train", bench.train, "Training CSV");
  bench_cmd->add_option("--test", bench.test, "Test CSV");
  bench_cmd->add_option("--target", bench.target, "Response column");
  bench_cmd->add_option("--synthetic", bench.synthetic, "Built-in generator")
      ->check(CLI::IsMember({"linear", "noise", "classification"}));
  bench_cmd->add_option("--n", bench.n, "Synthetic training rows")->capture_default_str();
  bench_cmd->add_option("--n-test", bench.n_test, "Synthetic test rows")->capture_default_str();
  bench_cmd->add_option("--features", bench.features, "Synthetic feature count")
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Data and simulation seed")->capture_default_str();
  bench_cmd->add_option("--loss", bench.loss, "Loss (default logloss for classification, else mse)")
      ->check(CLI::IsMember(kLosses));
  bench.dispersion_opt =
      bench_cmd->add_option("--dispersion", bench.dispersion, "Negbinom dispersion r > 0");
  bench_cmd->add_option("--learning-rate", bench.learning_rate, "Learning rate")
      ->capture_default_str();
  bench_cmd->add_option("--nsim", bench.nsim, "CIR replicates per grid")->capture_default_str();
  bench_cmd->add_option("--max-iterations", bench.max_iterations, "Safety cap on trees")
      ->capture_default_str();
  bench_cmd->add_flag("--auc", bench.auc, "Report AUC (requires a binary response)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : ExitCode(Errc::kConfig);
  }

  try {
    if (*train_cmd) return RunTrain(train, out, err);
    if (*predict_cmd) return RunPredict(predict, out);
    if (*validate_cmd) return RunValidate(validate, out);
    if (*importance_cmd) return RunImportance(importance, out, err);
    if (*bench_cmd) return RunBenchmark(bench, out);
  } catch (const Error& e) {
    err << "error (" << ErrcName(e.code()) << "): " << e.what() << '\n';
    return ExitCode(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return ExitCode(Errc::kConfig);
}

}  // namespace icboost::cli
