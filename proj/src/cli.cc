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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "convsql/corpus.h"
#include "convsql/errors.h"
#include "convsql/eval.h"
#include "convsql/infer.h"
#include "convsql/perturb.h"

namespace convsql {
namespace {

std::vector<std::string> SplitList(const std::string &text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const size_t b = item.find_first_not_of(' ');
    const size_t e = item.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

struct BuildCorpusArgs {
  std::string config;
  std::string stage;
  std::string out;
  std::optional<uint64_t> seed;
  std::string tasks;
  std::string datasets;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<int> jobs;
};

int BuildCorpusCommand(const BuildCorpusArgs &a, std::ostream &err) {
  CorpusConfig config = LoadCorpusConfig(a.config);
  if (a.seed) {
    config.seed = *a.seed;
    if (config.perturb) config.perturb->seed = *a.seed;
  }
  if (!a.tasks.empty()) {
    config.enabled_tasks.clear();
    for (const std::string &t : SplitList(a.tasks)) config.enabled_tasks.insert(ParseTask(t));
    if (config.enabled_tasks.empty()) throw FormatError("", "--tasks selects no task");
  }
  if (!a.datasets.empty()) {
    const std::vector<std::string> keep = SplitList(a.datasets);
    std::vector<DatasetSpec> filtered;
    for (const std::string &name : keep) {
      bool found = false;
      for (const DatasetSpec &d : config.datasets) {
        if (d.name == name) {
          filtered.push_back(d);
          found = true;
        }
      }
      if (!found) throw FormatError("", "dataset '" + name + "' is not in the config");
    }
    config.datasets = std::move(filtered);
  }
  if (a.alpha || a.beta) {
    if (!config.perturb) config.perturb = PerturbConfig{0.15, 0.15, config.seed};
    if (a.alpha) config.perturb->alpha = *a.alpha;
    if (a.beta) config.perturb->beta = *a.beta;
    ValidatePerturbConfig(*config.perturb);
  }
  if (a.jobs) config.jobs = *a.jobs;

  Corpus corpus;
  if (a.stage == "pretrain") {
    config.perturb.reset();
    corpus = BuildPretrainCorpus(config);
  } else {
    if (!config.perturb) {
      throw FormatError("", "finetune stage needs perturbation settings (config.perturb or --alpha/--beta)");
    }
    corpus = BuildFinetuneCorpus(config);
  }
  const std::string manifest = a.out + ".manifest.json";
  WriteCorpusFiles(corpus, a.out, manifest);
  err << "wrote " << corpus.samples.size() << " samples to " << a.out << " (manifest " << manifest
      << ")\n";
  return 0;
}

int StatsCommand(const std::string &path, std::ostream &out) {
  out << ComputeCorpusStats(path).ToJson().dump(2) << '\n';
  return 0;
}

const DatabaseSchema &FindSchema(const SchemaCatalog &catalog, const std::string &db) {
  auto it = catalog.find(db);
  if (it == catalog.end()) throw FormatError(db, "db_id not found in schema catalog");
  return it->second;
}

int PerturbCommand(const std::string &sql, const std::string &tables, const std::string &db,
                   double beta, uint64_t seed, std::ostream &out) {
  const SchemaCatalog catalog = LoadSchemas(tables);
  const DatabaseSchema &schema = FindSchema(catalog, db);
  Rng rng(seed);
  out << PrintSql(PerturbSql(ParseCanonical(sql, schema), schema, beta, rng)) << '\n';
  return 0;
}

struct InferArgs {
  std::string endpoint;
  std::string stub;
  std::string data;
  std::string tables;
  std::string out;
  std::string config;
  int jobs = 1;
  int timeout_ms = 30000;
  int retries = 2;
};

int InferCommand(const InferArgs &a, std::ostream &err) {
  const CorpusConfig config = a.config.empty() ? CorpusConfig{} : LoadCorpusConfig(a.config);
  const SchemaCatalog catalog = LoadSchemas(a.tables);
  const std::vector<Interaction> gold = LoadInteractions(a.data, false, catalog);
  ModelEndpoint endpoint;
  endpoint.transport = a.endpoint.empty() ? a.stub : a.endpoint;
  endpoint.timeout = std::chrono::milliseconds(a.timeout_ms);
  endpoint.max_retries = a.retries;
  const std::unique_ptr<Generator> generator = MakeGenerator(endpoint, gold);
  const InferenceRun run = RunDataset(*generator, gold, catalog, config, endpoint.max_retries, a.jobs);
  std::ofstream out(a.out, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + a.out + "'");
  WritePredictions(run, out);
  for (const TurnError &e : run.errors) {
    err << "endpoint error: interaction " << e.interaction_id << " turn " << e.turn << ": "
        << e.cause << '\n';
  }
  size_t turns = 0;
  for (const auto &[id, preds] : run.predictions) turns += preds.size();
  err << "predicted " << turns << " turns over " << run.order.size() << " interactions ("
      << run.errors.size() << " failed)\n";
  return 0;
}

int EvalCommand(const std::string &pred, const std::string &gold_path, const std::string &tables,
                const std::string &report_path, std::ostream &out) {
  const SchemaCatalog catalog = LoadSchemas(tables);
  const std::vector<Interaction> gold = LoadInteractions(gold_path, false, catalog);
  const EvalReport report = Evaluate(ReadPredictions(pred), gold, catalog);
  if (!report_path.empty()) {
    std::ofstream f(report_path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write '" + report_path + "'");
    f << report.ToJson().dump(2) << '\n';
  }
  out << report.ToText();
  return 0;
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Conversational text-to-SQL data toolkit: corpus building, perturbation, "
               "inference and evaluation.",
               "convsql"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  BuildCorpusArgs build;
  CLI::App *build_cmd = app.add_subcommand("build-corpus", "Build a pretrain or finetune corpus");
  build_cmd->add_option("--config", build.config, "Corpus config (JSON)")->required()->check(CLI::ExistingFile);
  build_cmd->add_option("--stage", build.stage, "pretrain | finetune")
      ->required()
      ->check(CLI::IsMember({"pretrain", "finetune"}));
  build_cmd->add_option("--out", build.out, "Output JSONL path")->required();
  build_cmd->add_option("--seed", build.seed, "Shuffle/perturbation seed");
  build_cmd->add_option("--tasks", build.tasks, "Comma-separated subset of SG,RSP,TWP,FUP");
  build_cmd->add_option("--datasets", build.datasets, "Comma-separated dataset names to keep");
  build_cmd->add_option("--alpha", build.alpha, "Context replacement probability")->check(CLI::Range(0.0, 1.0));
  build_cmd->add_option("--beta", build.beta, "Perturbation token fraction")->check(CLI::Range(0.0, 1.0));
  build_cmd->add_option("--jobs", build.jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::string stats_path;
  CLI::App *stats_cmd = app.add_subcommand("stats", "Count samples in a corpus file");
  stats_cmd->add_option("corpus", stats_path, "Corpus JSONL")->required();

  std::string p_sql, p_tables, p_db;
  double p_beta = 0.15;
  uint64_t p_seed = 0;
  CLI::App *perturb_cmd = app.add_subcommand("perturb", "Perturb one SQL query");
  perturb_cmd->add_option("--sql", p_sql, "SQL query")->required();
  perturb_cmd->add_option("--tables", p_tables, "Schema catalog (tables.json)")->required();
  perturb_cmd->add_option("--db", p_db, "Database id")->required();
  perturb_cmd->add_option("--beta", p_beta, "Perturbation token fraction")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  perturb_cmd->add_option("--seed", p_seed, "RNG seed")->capture_default_str();

  InferArgs infer;
  CLI::App *infer_cmd = app.add_subcommand("infer", "Run context-chained inference");
  auto *endpoint_opt = infer_cmd->add_option("--endpoint", infer.endpoint, "Model server base URL");
  auto *stub_opt = infer_cmd->add_option(
      "--stub", infer.stub, "Built-in stub: gold-echo | constant:<sql> | fail-at:<id>:<turn> | fail-all");
  endpoint_opt->excludes(stub_opt);
  infer_cmd->add_option("--data", infer.data, "Interactions file")->required();
  infer_cmd->add_option("--tables", infer.tables, "Schema catalog (tables.json)")->required();
  infer_cmd->add_option("--out", infer.out, "Predictions JSONL output")->required();
  infer_cmd->add_option("--config", infer.config, "Corpus config supplying prompts and separators");
  infer_cmd->add_option("--jobs", infer.jobs, "Concurrent interactions")->check(CLI::PositiveNumber);
  infer_cmd->add_option("--timeout-ms", infer.timeout_ms, "Per-request timeout")->check(CLI::PositiveNumber);
  infer_cmd->add_option("--retries", infer.retries, "Retries per turn")->check(CLI::NonNegativeNumber);

  std::string e_pred, e_gold, e_tables, e_report;
  CLI::App *eval_cmd = app.add_subcommand("eval", "Score predictions with QM/IM");
  eval_cmd->add_option("--pred", e_pred, "Predictions JSONL")->required();
  eval_cmd->add_option("--gold", e_gold, "Gold interactions file")->required();
  eval_cmd->add_option("--tables", e_tables, "Schema catalog (tables.json)")->required();
  eval_cmd->add_option("--report", e_report, "Write the JSON report here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (infer_cmd->parsed() && infer.endpoint.empty() && infer.stub.empty()) {
      throw CLI::RequiredError("--endpoint or --stub");
    }
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (build_cmd->parsed()) return BuildCorpusCommand(build, err);
    if (stats_cmd->parsed()) return StatsCommand(stats_path, out);
    if (perturb_cmd->parsed()) return PerturbCommand(p_sql, p_tables, p_db, p_beta, p_seed, out);
    if (infer_cmd->parsed()) return InferCommand(infer, err);
    if (eval_cmd->parsed()) return EvalCommand(e_pred, e_gold, e_tables, e_report, out);
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace convsql
