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

// Unified prompt-tagged Seq2Seq samples: (prompt, input, target) records
// for SQL generation and the three auxiliary tasks, plus the two-stage
// corpus builders and corpus statistics.

#ifndef CONVSQL_CORPUS_H_
#define CONVSQL_CORPUS_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "convsql/labels.h"
#include "convsql/perturb.h"
#include "convsql/schema.h"
#include "json.hpp"

namespace convsql {

enum class Task { kSG, kRSP, kTWP, kFUP };

std::string TaskName(Task task);  // "SG", "RSP", ...
Task ParseTask(const std::string &name);  // throws FormatError

struct SampleMeta {
  std::string dataset;
  std::string db_id;
  std::string interaction_id;
  int turn_index = 1;
  bool perturbed = false;
  bool operator==(const SampleMeta &) const = default;
};

struct TaskSample {
  Task task = Task::kSG;
  std::string prompt;
  std::string input;   // prompt + " " + serialized context
  std::string target;
  SampleMeta meta;
  bool operator==(const TaskSample &) const = default;
};

struct Separators {
  std::string segment = " | ";
  std::string schema_prefix = " || ";
};

struct DatasetSpec {
  std::string name;
  std::string interactions_path;
  std::string tables_path;
  bool context_independent = false;
};

struct CorpusConfig {
  std::set<Task> enabled_tasks = {Task::kSG, Task::kRSP, Task::kTWP, Task::kFUP};
  std::vector<DatasetSpec> datasets;
  std::map<Task, std::string> prompts = DefaultPrompts();
  std::optional<PerturbConfig> perturb;
  Separators separators;
  uint64_t seed = 0;
  bool skip_unparsable = false;
  int jobs = 1;

  static std::map<Task, std::string> DefaultPrompts();
  const std::string &Prompt(Task task) const;
};

// Reads a JSON config whose fields mirror CorpusConfig. Relative dataset
// paths resolve against the config file's directory.
CorpusConfig LoadCorpusConfig(const std::string &path);
CorpusConfig CorpusConfigFromJson(const nlohmann::json &doc,
                                  const std::string &base_dir = "");

// Reads a Spider-style (one record per question) or SparC/CoSQL-style
// (records with an "interaction" list) file. Every gold SQL must parse
// against its database in `schemas`; a failure raises ParseError unless
// `skip_unparsable`, in which case the interaction is dropped and counted
// in `skipped`.
std::vector<Interaction> LoadInteractions(const std::string &path,
                                          bool context_independent,
                                          const SchemaCatalog &schemas,
                                          bool skip_unparsable = false,
                                          size_t *skipped = nullptr);
std::vector<Interaction> ParseInteractions(const nlohmann::json &doc,
                                           bool context_independent,
                                           const SchemaCatalog &schemas,
                                           bool skip_unparsable = false,
                                           size_t *skipped = nullptr);

// [u1, s1, ..., u_t] joined by the segment separator, then the schema
// prefix and the serialized schema.
std::string BuildInput(const std::vector<std::pair<std::string, std::string>> &history,
                       const std::string &current_utterance,
                       const DatabaseSchema &schema, const Separators &separators);

// All samples of one interaction, in turn order: per turn SG, RSP, TWP
// (turn >= 2), then FUP. Context-independent datasets yield SG and RSP
// only.
std::vector<TaskSample> MakeSamples(const Interaction &interaction,
                                    const DatabaseSchema &schema,
                                    const CorpusConfig &config,
                                    const std::string &dataset,
                                    bool context_independent);

struct PerturbationStats {
  uint64_t context_slots = 0;   // previous-turn SQLs seen while building inputs
  uint64_t slots_selected = 0;  // slots that drew a replacement (prob. alpha)
  uint64_t slots_altered = 0;   // selected slots whose SQL actually changed
};

struct Manifest {
  std::string stage;
  uint64_t seed = 0;
  // dataset -> task -> count
  std::map<std::string, std::map<std::string, uint64_t>> counts;
  std::map<std::string, uint64_t> interactions;
  std::map<std::string, uint64_t> turns;
  std::map<std::string, uint64_t> skipped;
  std::optional<PerturbConfig> perturb;
  PerturbationStats perturbation;
  uint64_t total = 0;

  nlohmann::ordered_json ToJson() const;
};

struct Corpus {
  std::vector<TaskSample> samples;  // already shuffled
  Manifest manifest;
};

// Stage 1: every enabled task over every dataset, shuffled by seed.
Corpus BuildPretrainCorpus(const CorpusConfig &config);

// Stage 2: SG only; each previous-turn SQL in the input is independently
// replaced by a perturbed copy with probability alpha.
Corpus BuildFinetuneCorpus(const CorpusConfig &config);

std::string SampleToJsonLine(const TaskSample &sample);
TaskSample SampleFromJson(const nlohmann::json &line);
void WriteJsonl(const std::vector<TaskSample> &samples, std::ostream &out);
void WriteCorpusFiles(const Corpus &corpus, const std::string &jsonl_path,
                      const std::string &manifest_path);

struct CorpusStats {
  // dataset -> task -> count
  std::map<std::string, std::map<std::string, uint64_t>> by_task;
  // task -> turn index -> count
  std::map<std::string, std::map<int, uint64_t>> by_turn;
  uint64_t questions = 0;     // SG samples
  uint64_t interactions = 0;  // distinct (dataset, interaction_id)
  uint64_t samples = 0;

  uint64_t Count(const std::string &dataset, Task task) const;
  uint64_t TaskTotal(Task task) const;
  nlohmann::ordered_json ToJson() const;
};

CorpusStats ComputeCorpusStats(std::istream &jsonl);
CorpusStats ComputeCorpusStats(const std::string &path);

}  // namespace convsql

#endif  // CONVSQL_CORPUS_H_
