/*
 * Copyright 2026 The PatSTEG Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "patsteg/cli.hpp"
#include "patsteg/checkpoint.hpp"
#include "support/synthetic.hpp"

namespace patsteg {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "patsteg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json json_file(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    data_ = new fs::path(testing::scratch_dir("cli_data"));
    testing::CommunityOptions options;
    options.nodes = 80;
    testing::write_dataset(testing::community_corpus(options, 3), *data_);
    ingested_ = new fs::path(testing::scratch_dir("cli_ingested"));
    const auto r = ingest(*ingested_, {});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto t = run({"train", "--manifest", manifest(), "--epochs", "1", "--struct-dim", "4",
                        "--aspects", "2", "--alternations", "1", "--out-dir", ingested_->string()});
    ASSERT_EQ(t.code, 0) << t.err;
  }
  static void TearDownTestSuite() {
    delete data_;
    delete ingested_;
  }

  static CliRun ingest(const fs::path& out, std::vector<std::string> extra) {
    std::vector<std::string> args = {"ingest", "--edges", (*data_ / "edges.tsv").string(),
                                     "--text", (*data_ / "text.tsv").string(), "--vectors",
                                     (*data_ / "vectors.txt").string(), "--seed", "4",
                                     "--out-dir", out.string()};
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
  }
  static std::string manifest() { return (*ingested_ / "manifest.json").string(); }
  static std::vector<std::string> trained() {
    return {"--manifest", manifest(), "--checkpoint", (*ingested_ / "checkpoint.json").string(),
            "--state", (*ingested_ / "state.json").string()};
  }
  static CliRun train(const fs::path& out, std::vector<std::string> extra) {
    std::vector<std::string> args = {"train", "--manifest", manifest(), "--epochs", "1",
                                     "--struct-dim", "4", "--aspects", "2", "--out-dir", out.string()};
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
  }

  static fs::path* data_;
  static fs::path* ingested_;
};

fs::path* CliTest::data_ = nullptr;
fs::path* CliTest::ingested_ = nullptr;

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"train", "--epochs", "many"}).code, 1);
  EXPECT_EQ(train(testing::scratch_dir("cli_usage"), {"--variant", "sideways"}).code, 1);
  EXPECT_EQ(train(testing::scratch_dir("cli_usage2"), {"--batch-size", "0"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, MissingAndMalformedFilesExitTwo) {
  const auto dir = testing::scratch_dir("cli_missing");
  auto r = run({"ingest", "--edges", (dir / "nope.tsv").string(), "--text", (*data_ / "text.tsv").string(),
                "--vectors", (*data_ / "vectors.txt").string(), "--out-dir", dir.string()});
  EXPECT_EQ(r.code, 2) << r.err;
  EXPECT_FALSE(r.err.empty());

  std::ofstream(dir / "checkpoint.json") << "{\"dims\": 3}";
  auto args = trained();
  args[3] = (dir / "checkpoint.json").string();
  args.insert(args.begin(), "evaluate");
  args.insert(args.end(), {"--out-dir", dir.string()});
  r = run(args);
  EXPECT_EQ(r.code, 2) << r.err;
}

TEST_F(CliTest, UnknownTargetExitsThree) {
  auto args = trained();
  args.insert(args.begin(), "explain");
  args.insert(args.end(), {"--target", "no-such-node", "--out-dir",
                           testing::scratch_dir("cli_unknown").string()});
  EXPECT_EQ(run(args).code, 3);
}

TEST_F(CliTest, VariantControlsPhases) {
  const auto ndp = testing::scratch_dir("cli_ndp");
  ASSERT_EQ(train(ndp, {"--variant", "ndp", "--alternations", "3"}).code, 0);
  auto report = json_file(ndp / "train_report.json");
  EXPECT_EQ(report["sd_phases"], 0);
  EXPECT_EQ(report["sy_phases"], 3);

  const auto dp = testing::scratch_dir("cli_dp");
  ASSERT_EQ(train(dp, {"--variant", "dp", "--alternations", "3"}).code, 0);
  report = json_file(dp / "train_report.json");
  EXPECT_EQ(report["sd_phases"], 3);
  EXPECT_EQ(report["sy_phases"], 3);
}

TEST_F(CliTest, ConfigFileEnvironmentAndFlagPrecedence) {
  const auto dir = testing::scratch_dir("cli_config");
  std::ofstream(dir / "train.conf") << "# training overrides\nlearning_rate = 0.2\nmargin_edge=0.5\nseed = 5\n";
  const std::string conf = (dir / "train.conf").string();

  ASSERT_EQ(train(dir / "a", {"--config", conf}).code, 0);
  auto cfg = json_file(dir / "a" / "train_config.json")["train"];
  EXPECT_EQ(cfg["learning_rate"], 0.2);
  EXPECT_EQ(cfg["margin_edge"], 0.5);
  EXPECT_EQ(cfg["seed"], 5);

  ASSERT_EQ(train(dir / "b", {"--config", conf, "--learning-rate", "0.3"}).code, 0);
  cfg = json_file(dir / "b" / "train_config.json")["train"];
  EXPECT_EQ(cfg["learning_rate"], 0.3);
  EXPECT_EQ(cfg["margin_edge"], 0.5);

  ::setenv("PATSTEG_SEED", "9", 1);
  ASSERT_EQ(train(dir / "c", {"--config", conf}).code, 0);
  ASSERT_EQ(train(dir / "d", {"--config", conf, "--seed", "12"}).code, 0);
  ::unsetenv("PATSTEG_SEED");
  EXPECT_EQ(json_file(dir / "c" / "train_config.json")["train"]["seed"], 9);
  EXPECT_EQ(json_file(dir / "d" / "train_config.json")["train"]["seed"], 12);

  std::ofstream(dir / "bad.conf") << "no_such_key = 1\n";
  EXPECT_EQ(train(dir / "e", {"--config", (dir / "bad.conf").string()}).code, 2);
}

TEST_F(CliTest, ExplainHonoursTopN) {
  const auto dir = testing::scratch_dir("cli_explain");
  auto args = trained();
  args.insert(args.begin(), "explain");
  args.insert(args.end(), {"--target", "p0", "--top-n", "2", "--out-dir", dir.string()});
  ASSERT_EQ(run(args).code, 0);
  const auto exp = json_file(dir / "explanation.json");
  std::size_t listed = 0;
  for (const auto& g : exp["aspects"]) {
    EXPECT_LE(g["citers"].size(), 2u);
    listed += g["citers"].size();
  }
  EXPECT_GT(listed, 0u);

  args.insert(args.end(), {"--format", "csv"});
  ASSERT_EQ(run(args).code, 0);
  const auto csv = slurp(dir / "explanation.csv");
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), listed + 1);
}

TEST_F(CliTest, PredictWritesScores) {
  const auto dir = testing::scratch_dir("cli_predict");
  std::ofstream(dir / "pairs.tsv") << "p5\tp0\np6\tp1\n";
  auto args = trained();
  args.insert(args.begin(), "predict");
  args.insert(args.end(), {"--pairs", (dir / "pairs.tsv").string(), "--out-dir", dir.string()});
  ASSERT_EQ(run(args).code, 0);
  const auto csv = slurp(dir / "predictions.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "source,target,score,masked_score,aspect");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);

  std::ofstream(dir / "self.tsv") << "p5\tp5\n";
  args[args.size() - 3] = (dir / "self.tsv").string();
  EXPECT_EQ(run(args).code, 3);
}

TEST_F(CliTest, CommandsAreIdempotent) {
  const auto a = testing::scratch_dir("cli_idem_a");
  const auto b = testing::scratch_dir("cli_idem_b");
  ASSERT_EQ(ingest(a, {}).code, 0);
  ASSERT_EQ(ingest(b, {}).code, 0);
  EXPECT_EQ(slurp(a / "manifest.json"), slurp(b / "manifest.json"));
  ASSERT_EQ(train(a, {}).code, 0);
  ASSERT_EQ(train(b, {}).code, 0);
  EXPECT_EQ(slurp(a / "checkpoint.json"), slurp(b / "checkpoint.json"));
  EXPECT_EQ(slurp(a / "state.json"), slurp(b / "state.json"));
  for (const auto& dir : {a, b}) {
    auto args = trained();
    args.insert(args.begin(), "evaluate");
    args.insert(args.end(), {"--out-dir", dir.string()});
    ASSERT_EQ(run(args).code, 0);
  }
  EXPECT_EQ(slurp(a / "metrics.json"), slurp(b / "metrics.json"));
}

TEST_F(CliTest, ChangedInputIsDetected) {
  const auto dir = testing::scratch_dir("cli_changed");
  for (const char* f : {"edges.tsv", "text.tsv", "vectors.txt"}) fs::copy_file(*data_ / f, dir / f);
  const auto out = dir / "out";
  ASSERT_EQ(run({"ingest", "--edges", (dir / "edges.tsv").string(), "--text", (dir / "text.tsv").string(),
                 "--vectors", (dir / "vectors.txt").string(), "--out-dir", out.string()})
                .code,
            0);
  std::ofstream(dir / "edges.tsv", std::ios::app) << "p1\tp0\n";
  const auto r = run({"train", "--manifest", (out / "manifest.json").string(), "--epochs", "1",
                      "--out-dir", out.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("changed since ingest"), std::string::npos) << r.err;
}

}  // namespace
}  // namespace patsteg
