// Copyright 2026 The convsql Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "convsql/cli.h"

#include <gtest/gtest.h>

#include <sstream>

#include "convsql/corpus.h"
#include "convsql/eval.h"
#include "convsql/perturb.h"
#include "convsql/rng.h"
#include "oracles.h"

namespace convsql {
namespace {

using testing::FixturePath;
using testing::ReadFile;
using testing::ScratchPath;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

const char kFigureSql[] = "select * from college where enr > 15000";

TEST(Cli, HelpExitsZero) {
  const Result r = Invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("build-corpus"), std::string::npos);
  EXPECT_NE(r.out.find("perturb"), std::string::npos);
}

TEST(Cli, NoSubcommandIsUsageError) { EXPECT_EQ(Invoke({}).code, 2); }

TEST(Cli, UnknownFlagIsUsageError) {
  EXPECT_EQ(Invoke({"stats", "x.jsonl", "--bogus"}).code, 2);
}

TEST(Cli, MissingRequiredIsUsageError) {
  EXPECT_EQ(Invoke({"perturb", "--sql", kFigureSql}).code, 2);
}

TEST(Cli, BetaOutOfRangeIsUsageError) {
  EXPECT_EQ(Invoke({"perturb", "--sql", kFigureSql, "--tables", FixturePath("tables.json"), "--db",
                 "college_db", "--beta", "1.5"})
                .code,
            2);
}

TEST(Cli, InferNeedsEndpointOrStub) {
  EXPECT_EQ(Invoke({"infer", "--data", FixturePath("mini_sparc.json"), "--tables",
                 FixturePath("tables.json"), "--out", ScratchPath("p.jsonl")})
                .code,
            2);
}

TEST(Cli, UnknownDbIsDomainError) {
  const Result r = Invoke({"perturb", "--sql", kFigureSql, "--tables", FixturePath("tables.json"),
                        "--db", "nope"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST(Cli, UnparsableSqlIsDomainError) {
  EXPECT_EQ(Invoke({"perturb", "--sql", "select from where", "--tables", FixturePath("tables.json"),
                 "--db", "college_db"})
                .code,
            1);
}

TEST(Cli, PerturbPrintsReachableQuery) {
  const DatabaseSchema &schema = testing::Schema("college_db");
  const SqlQuery canonical = ParseCanonical(kFigureSql, schema);
  const size_t k = PerturbBudget(canonical, 0.15);
  const std::set<std::string> reachable = testing::ReachablePerturbations(canonical, schema, k);
  for (uint64_t seed : {7u, 8u, 9u, 10u}) {
    const Result r = Invoke({"perturb", "--sql", kFigureSql, "--tables", FixturePath("tables.json"),
                          "--db", "college_db", "--beta", "0.15", "--seed",
                          std::to_string(seed)});
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_FALSE(r.out.empty());
    const std::string line = r.out.substr(0, r.out.size() - 1);
    EXPECT_EQ(r.out.back(), '\n');
    EXPECT_TRUE(reachable.count(line)) << line;
    Rng rng(seed);
    EXPECT_EQ(line, PrintSql(PerturbSql(canonical, schema, 0.15, rng)));
  }
}

TEST(Cli, PretrainMatchesLibraryBytes) {
  const std::string out = ScratchPath("cli_pretrain.jsonl");
  const Result r = Invoke({"build-corpus", "--config", FixturePath("corpus_config.json"), "--stage",
                        "pretrain", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ostringstream lib;
  WriteJsonl(BuildPretrainCorpus(LoadCorpusConfig(FixturePath("corpus_config.json"))).samples, lib);
  EXPECT_EQ(ReadFile(out), lib.str());
  EXPECT_FALSE(ReadFile(out + ".manifest.json").empty());
}

TEST(Cli, FinetuneMatchesLibraryBytes) {
  const std::string out = ScratchPath("cli_finetune.jsonl");
  const Result r = Invoke({"build-corpus", "--config", FixturePath("corpus_config.json"), "--stage",
                        "finetune", "--out", out, "--jobs", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ostringstream lib;
  WriteJsonl(BuildFinetuneCorpus(LoadCorpusConfig(FixturePath("corpus_config.json"))).samples, lib);
  EXPECT_EQ(ReadFile(out), lib.str());
}

TEST(Cli, FinetuneWithoutPerturbIsDomainError) {
  const Result r = Invoke({"build-corpus", "--config", FixturePath("mini_config.json"), "--stage",
                        "finetune", "--out", ScratchPath("ft.jsonl")});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, StatsAfterBuild) {
  const std::string out = ScratchPath("cli_stats.jsonl");
  ASSERT_EQ(Invoke({"build-corpus", "--config", FixturePath("corpus_config.json"), "--stage",
                 "pretrain", "--out", out})
                .code,
            0);
  const Result r = Invoke({"stats", out});
  ASSERT_EQ(r.code, 0) << r.err;
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  const CorpusStats stats = ComputeCorpusStats(out);
  EXPECT_EQ(doc, nlohmann::json::parse(stats.ToJson().dump()));
  const uint64_t sg = stats.TaskTotal(Task::kSG);
  EXPECT_EQ(stats.TaskTotal(Task::kRSP), sg);
  EXPECT_EQ(stats.Count("sparc", Task::kTWP), 133u - 53u);
  EXPECT_EQ(stats.Count("sparc", Task::kFUP), 32u);
  EXPECT_EQ(stats.Count("spider", Task::kTWP), 0u);
  EXPECT_EQ(stats.samples, 428u);
}

TEST(Cli, TaskAndDatasetFilters) {
  const std::string out = ScratchPath("cli_filter.jsonl");
  ASSERT_EQ(Invoke({"build-corpus", "--config", FixturePath("corpus_config.json"), "--stage",
                 "pretrain", "--out", out, "--tasks", "SG, TWP", "--datasets", "sparc"})
                .code,
            0);
  const CorpusStats stats = ComputeCorpusStats(out);
  EXPECT_EQ(stats.samples, 133u + 80u);
  EXPECT_EQ(stats.TaskTotal(Task::kRSP), 0u);
  EXPECT_EQ(Invoke({"build-corpus", "--config", FixturePath("corpus_config.json"), "--stage",
                 "pretrain", "--out", out, "--datasets", "cosql"})
                .code,
            1);
}

TEST(Cli, InferThenEval) {
  const std::string pred = ScratchPath("cli_pred.jsonl");
  const std::string report = ScratchPath("cli_report.json");
  Result r = Invoke({"infer", "--stub", "gold-echo", "--data", FixturePath("sparc_dev.json"),
                  "--tables", FixturePath("tables.json"), "--out", pred, "--jobs", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  r = Invoke({"eval", "--pred", pred, "--gold", FixturePath("sparc_dev.json"), "--tables",
           FixturePath("tables.json"), "--report", report});
  ASSERT_EQ(r.code, 0) << r.err;
  const nlohmann::json doc = nlohmann::json::parse(ReadFile(report));
  EXPECT_DOUBLE_EQ(doc.at("qm").get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(doc.at("im").get<double>(), 1.0);
  EXPECT_FALSE(r.out.empty());
}

TEST(Cli, InferFailingTurnLowersIm) {
  const std::string pred = ScratchPath("cli_pred_fail.jsonl");
  ASSERT_EQ(Invoke({"infer", "--stub", "fail-at:2:1", "--data", FixturePath("sparc_dev.json"),
                 "--tables", FixturePath("tables.json"), "--out", pred})
                .code,
            0);
  const EvalReport rep = Evaluate(ReadPredictions(pred),
                                  LoadInteractions(FixturePath("sparc_dev.json"), false,
                                                   testing::FixtureSchemas()),
                                  testing::FixtureSchemas());
  EXPECT_LT(rep.qm, 1.0);
  EXPECT_LT(rep.im, 1.0);
}

}  // namespace
}  // namespace convsql
