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

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "icboost/errors.hpp"
#include "icboost/io.hpp"
#include "metrics.hpp"
#include "synthetic.hpp"

namespace icboost {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result RunCli(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"icboost"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : storage) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::Run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteCsv(const fs::path& path, const Dataset& data, const std::string& target = "y") {
  std::ofstream out(path);
  for (std::size_t j = 0; j < data.cols(); ++j) out << data.feature_names[j] << ',';
  out << target << '\n';
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t j = 0; j < data.cols(); ++j) out << FormatDouble(data.x.at(i, j)) << ',';
    out << FormatDouble(data.y[i]) << '\n';
  }
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("icboost_cli_" + std::string(::testing::UnitTest::GetInstance()
                                             ->current_test_info()
                                             ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, TrainWritesModelAndLog) {
  WriteCsv(Path("train.csv"), synth::LinearGaussian(600, 1, 1));
  const Result r = RunCli({"train", "--loss", "mse", "--data", Path("train.csv"), "--target",
                           "y", "--out", Path("m.gbt"), "--verbose", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("it: 1  |  n-leaves: ", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("it: 50  |"), std::string::npos);
  EXPECT_TRUE(fs::exists(Path("m.gbt")));
  const std::string log = Slurp(Path("m.gbt.log.csv"));
  EXPECT_EQ(log.rfind("iteration,leaves,train_loss,gen_loss\n1,", 0), 0u);

  const Result with_log = RunCli({"train", "--loss", "mse", "--data", Path("train.csv"),
                                  "--target", "y", "--out", Path("m2.gbt"), "--log",
                                  Path("log.csv")});
  ASSERT_EQ(with_log.code, 0);
  EXPECT_EQ(with_log.out.find("it: "), std::string::npos);
  EXPECT_EQ(Slurp(Path("log.csv")), log);
}

TEST_F(CliTest, TrainIsByteDeterministic) {
  WriteCsv(Path("d.csv"), synth::LinearGaussian(800, 2, 2));
  for (const char* name : {"a.gbt", "b.gbt"}) {
    const Result r = RunCli({"train", "--loss", "mse", "--algorithm", "vanilla",
                             "--learning-rate", "0.1", "--seed", "7", "--data", Path("d.csv"),
                             "--target", "y", "--out", Path(name)});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  EXPECT_EQ(Slurp(Path("a.gbt")), Slurp(Path("b.gbt")));
  EXPECT_FALSE(Slurp(Path("a.gbt")).empty());
}

TEST_F(CliTest, TrainErrorsHaveDistinctCodes) {
  WriteCsv(Path("d.csv"), synth::LinearGaussian(50, 2));
  const Result no_dispersion = RunCli({"train", "--loss", "negbinom", "--data", Path("d.csv"),
                                       "--target", "y", "--out", Path("m.gbt")});
  EXPECT_EQ(no_dispersion.code, 2);
  EXPECT_NE(no_dispersion.err.find("--dispersion"), std::string::npos);
  const Result stray = RunCli({"train", "--loss", "mse", "--dispersion", "2", "--data",
                               Path("d.csv"), "--target", "y", "--out", Path("m.gbt")});
  EXPECT_EQ(stray.code, 2);
  const Result unknown = RunCli({"train", "--loss", "huber", "--data", Path("d.csv"),
                                 "--target", "y", "--out", Path("m.gbt")});
  EXPECT_EQ(unknown.code, 2);
  const Result bad_rate = RunCli({"train", "--loss", "mse", "--learning-rate", "0", "--data",
                                  Path("d.csv"), "--target", "y", "--out", Path("m.gbt")});
  EXPECT_EQ(bad_rate.code, 2);

  {
    std::ofstream bad(Path("bad.csv"));
    bad << "x,y\n1,2\n3,oops\n";
  }
  const Result malformed = RunCli({"train", "--loss", "mse", "--data", Path("bad.csv"),
                                   "--target", "y", "--out", Path("m.gbt")});
  EXPECT_EQ(malformed.code, 3);
  EXPECT_NE(malformed.err.find("line 3, column 2"), std::string::npos) << malformed.err;

  // logloss needs a binary response.
  const Result domain = RunCli({"train", "--loss", "logloss", "--data", Path("d.csv"),
                                "--target", "y", "--out", Path("m.gbt")});
  EXPECT_EQ(domain.code, 4) << domain.err;

  const Result missing = RunCli({"train", "--loss", "mse", "--data", Path("none.csv"),
                                 "--target", "y", "--out", Path("m.gbt")});
  EXPECT_EQ(missing.code, 5);
  const Result unwritable = RunCli({"train", "--loss", "mse", "--data", Path("d.csv"),
                                    "--target", "y", "--out", Path("no/such/dir/m.gbt")});
  EXPECT_EQ(unwritable.code, 5);

  EXPECT_EQ(RunCli({}).code, 2);
  EXPECT_EQ(RunCli({"--help"}).code, 0);
}

TEST_F(CliTest, PredictConstantModelAndResponseScale) {
  Dataset constant;
  constant.x = FeatureMatrix::FromColumns({{1.0, 2.0, 3.0}});
  constant.y = {2.0, 2.0, 2.0};
  constant.feature_names = {"x1"};
  WriteCsv(Path("c.csv"), constant);
  ASSERT_EQ(RunCli({"train", "--loss", "mse", "--data", Path("c.csv"), "--target", "y", "--out",
                    Path("c.gbt")})
                .code,
            0);
  const Result flat = RunCli({"predict", "--model", Path("c.gbt"), "--data", Path("c.csv"),
                              "--target", "y"});
  ASSERT_EQ(flat.code, 0) << flat.err;
  EXPECT_EQ(flat.out, "prediction\n2\n2\n2\n");

  WriteCsv(Path("k.csv"), synth::Classification(600, 3, 4));
  ASSERT_EQ(RunCli({"train", "--loss", "logloss", "--learning-rate", "0.1", "--data",
                    Path("k.csv"), "--target", "y", "--out", Path("k.gbt")})
                .code,
            0);
  const Result probs = RunCli({"predict", "--model", Path("k.gbt"), "--data", Path("k.csv"),
                               "--target", "y", "--response-scale", "--out", Path("p.csv")});
  ASSERT_EQ(probs.code, 0) << probs.err;
  const CsvTable table = ReadCsvFile(Path("p.csv"));
  ASSERT_EQ(table.rows(), 600u);
  for (double p : table.columns[0]) {
    EXPECT_GT(p, 0.0);
    EXPECT_LT(p, 1.0);
  }

  // Predictions from the file equal the in-memory model's.
  const EnsembleModel model = LoadModelFile(Path("k.gbt"));
  const Dataset data = ToDataset(ReadCsvFile(Path("k.csv")), std::string("y"));
  const auto expected = model.PredictResponse(data.x);
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(table.columns[0][i], expected[i]);
}

TEST_F(CliTest, PredictArityMismatchNamesCounts) {
  WriteCsv(Path("d.csv"), synth::LinearGaussian(100, 1, 1));
  ASSERT_EQ(RunCli({"train", "--loss", "mse", "--data", Path("d.csv"), "--target", "y", "--out",
                    Path("m.gbt")})
                .code,
            0);
  const Result r = RunCli({"predict", "--model", Path("m.gbt"), "--data", Path("d.csv")});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("expects 2"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("has 3"), std::string::npos) << r.err;
}

TEST_F(CliTest, ValidateReportsAndWritesHistogram) {
  WriteCsv(Path("train.csv"), synth::LinearGaussian(800, 3));
  WriteCsv(Path("test.csv"), synth::LinearGaussian(800, 4));
  ASSERT_EQ(RunCli({"train", "--loss", "mse", "--learning-rate", "0.1", "--data",
                    Path("train.csv"), "--target", "y", "--out", Path("m.gbt")})
                .code,
            0);
  const Result r = RunCli({"validate", "--model", Path("m.gbt"), "--data", Path("test.csv"),
                           "--target", "y", "--gnuplot", Path("ks.gp")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Gaussian"), std::string::npos);
  EXPECT_NE(r.out.find("One-sample Kolmogorov-Smirnov test"), std::string::npos);
  EXPECT_NE(r.out.find("D = "), std::string::npos);
  EXPECT_NE(r.out.find(", p-value = "), std::string::npos);
  EXPECT_NE(r.out.find("variance = "), std::string::npos);
  const CsvTable histogram = ReadCsvFile(Path("m.gbt.ks.csv"));
  EXPECT_EQ(histogram.header, (std::vector<std::string>{"lower", "upper", "count"}));
  ASSERT_EQ(histogram.rows(), 20u);
  double total = 0.0;
  for (double c : histogram.columns[2]) total += c;
  EXPECT_EQ(total, 800.0);
  EXPECT_NE(Slurp(Path("ks.gp")).find("m.gbt.ks.csv"), std::string::npos);

  const Result again = RunCli({"validate", "--model", Path("m.gbt"), "--data", Path("test.csv"),
                               "--target", "y", "--histogram", Path("h.csv")});
  EXPECT_EQ(again.out, r.out);
  EXPECT_EQ(Slurp(Path("h.csv")), Slurp(Path("m.gbt.ks.csv")));
}

TEST_F(CliTest, ImportanceListsEveryFeature) {
  WriteCsv(Path("d.csv"), synth::LinearGaussian(2000, 5, 4));
  ASSERT_EQ(RunCli({"train", "--loss", "mse", "--data", Path("d.csv"), "--target", "y", "--out",
                    Path("m.gbt")})
                .code,
            0);
  const Result r = RunCli({"importance", "--model", Path("m.gbt")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "feature,raw,share");
  std::vector<std::string> names;
  std::vector<double> shares;
  while (std::getline(lines, line)) {
    names.push_back(line.substr(0, line.find(',')));
    shares.push_back(std::stod(line.substr(line.rfind(',') + 1)));
  }
  ASSERT_EQ(names.size(), 5u);
  EXPECT_EQ(names[0], "x1");
  EXPECT_GT(shares[0], 0.95);
  for (std::size_t k = 1; k < shares.size(); ++k) EXPECT_LE(shares[k], shares[k - 1]);

  {
    std::ofstream names_file(Path("names.txt"));
    names_file << "signal\nn1\nn2\nn3\nn4\n";
  }
  const Result named = RunCli({"importance", "--model", Path("m.gbt"), "--names",
                               Path("names.txt"), "--out", Path("imp.csv")});
  ASSERT_EQ(named.code, 0) << named.err;
  EXPECT_EQ(Slurp(Path("imp.csv")).find("feature,raw,share\nsignal,"), 0u);
}

TEST_F(CliTest, ImportanceOfStumpModel) {
  Dataset data;
  std::vector<double> a(40);
  std::vector<double> b(40);
  data.y.resize(40);
  for (std::size_t i = 0; i < 40; ++i) {
    a[i] = static_cast<double>(i % 7);
    b[i] = static_cast<double>(i);
    data.y[i] = i < 20 ? 0.0 : 10.0;
  }
  data.x = FeatureMatrix::FromColumns({a, b});
  data.feature_names = {"a", "b"};
  WriteCsv(Path("d.csv"), data);
  ASSERT_EQ(RunCli({"train", "--loss", "mse", "--learning-rate", "1", "--data", Path("d.csv"),
                    "--target", "y", "--out", Path("m.gbt")})
                .code,
            0);
  const Result r = RunCli({"importance", "--model", Path("m.gbt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.find("feature,raw,share\nb,"), 0u) << r.out;
  EXPECT_NE(r.out.find(",1\na,0,0\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, BenchmarkReportsBothAlgorithms) {
  const Result r = RunCli({"benchmark", "--synthetic", "classification", "--n", "300",
                           "--n-test", "1000", "--features", "4", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string header;
  std::string vanilla;
  std::string global;
  std::getline(lines, header);
  std::getline(lines, vanilla);
  std::getline(lines, global);
  for (const char* column : {"Algorithm", "Loss", "AUC", "Time", "#trees", "#leaves",
                             "#features"}) {
    EXPECT_NE(header.find(column), std::string::npos) << column;
  }
  EXPECT_EQ(vanilla.rfind("vanilla", 0), 0u);
  EXPECT_EQ(global.rfind("global-subset", 0), 0u);

  WriteCsv(Path("train.csv"), synth::LinearGaussian(300, 1));
  WriteCsv(Path("test.csv"), synth::LinearGaussian(300, 2));
  const Result csv = RunCli({"benchmark", "--train", Path("train.csv"), "--test",
                             Path("test.csv"), "--target", "y"});
  ASSERT_EQ(csv.code, 0) << csv.err;
  const Result auc = RunCli({"benchmark", "--train", Path("train.csv"), "--test",
                             Path("test.csv"), "--target", "y", "--auc"});
  EXPECT_EQ(auc.code, 2);
  EXPECT_NE(auc.err.find("AUC"), std::string::npos);
}

TEST(Auc, KnownValues) {
  const std::vector<double> y{0, 0, 1, 1};
  EXPECT_EQ(Auc(y, std::vector<double>{0.1, 0.2, 0.8, 0.9}), 1.0);
  EXPECT_EQ(Auc(y, std::vector<double>{0.9, 0.8, 0.2, 0.1}), 0.0);
  EXPECT_EQ(Auc(y, std::vector<double>{0.5, 0.5, 0.5, 0.5}), 0.5);
  EXPECT_EQ(Auc(y, std::vector<double>{0.1, 0.4, 0.35, 0.8}), 0.75);
  EXPECT_THROW(Auc(std::vector<double>{0, 2}, std::vector<double>{0.1, 0.2}), Error);
  EXPECT_THROW(Auc(std::vector<double>{1, 1}, std::vector<double>{0.1, 0.2}), Error);
}

}  // namespace
}  // namespace icboost
