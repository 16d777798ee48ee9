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

#include "convsql/corpus.h"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "convsql/errors.h"

namespace convsql {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string TaskName(Task task) {
  switch (task) {
    case Task::kSG: return "SG";
    case Task::kRSP: return "RSP";
    case Task::kTWP: return "TWP";
    case Task::kFUP: return "FUP";
  }
  return "";
}

Task ParseTask(const std::string &name) {
  const std::string upper = [&] {
    std::string s = name;
    for (char &c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
  }();
  if (upper == "SG") return Task::kSG;
  if (upper == "RSP") return Task::kRSP;
  if (upper == "TWP") return Task::kTWP;
  if (upper == "FUP") return Task::kFUP;
  throw FormatError("", "unknown task '" + name + "'");
}

std::map<Task, std::string> CorpusConfig::DefaultPrompts() {
  return {
      {Task::kSG, "translate the dialogue into a sql query:"},
      {Task::kRSP, "predict the related schema of the current query:"},
      {Task::kTWP, "predict the turn switch from the last query:"},
      {Task::kFUP, "predict the final utterance of the dialogue:"},
  };
}

const std::string &CorpusConfig::Prompt(Task task) const {
  auto it = prompts.find(task);
  if (it == prompts.end() || it->second.empty()) {
    throw FormatError("", "no prompt configured for task " + TaskName(task));
  }
  return it->second;
}

// ---------------------------------------------------------------------------
// Config

namespace {

void RejectUnknownKeys(const json &obj, std::initializer_list<const char *> known,
                       const std::string &where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char *k : known) ok = ok || it.key() == k;
    if (!ok) throw FormatError("", "unknown config key '" + it.key() + "' in " + where);
  }
}

template <typename T>
T Get(const json &obj, const char *key, const std::string &where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception &e) {
    throw FormatError("", where + "." + key + ": " + e.what());
  }
}

std::string ResolvePath(const std::string &path, const std::string &base_dir) {
  if (path.empty() || base_dir.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

}  // namespace

CorpusConfig CorpusConfigFromJson(const json &doc, const std::string &base_dir) {
  if (!doc.is_object()) throw FormatError("", "config root must be an object");
  RejectUnknownKeys(doc,
                    {"enabled_tasks", "datasets", "prompts", "perturb", "separators",
                     "seed", "skip_unparsable", "jobs"},
                    "config");
  CorpusConfig config;
  if (doc.contains("enabled_tasks")) {
    config.enabled_tasks.clear();
    for (const std::string &t : Get<std::vector<std::string>>(doc, "enabled_tasks", "config")) {
      config.enabled_tasks.insert(ParseTask(t));
    }
  }
  if (doc.contains("datasets")) {
    const json &list = doc.at("datasets");
    if (!list.is_array()) throw FormatError("", "config.datasets must be an array");
    for (const json &d : list) {
      RejectUnknownKeys(d, {"name", "interactions_path", "tables_path", "context_independent"},
                        "datasets[]");
      DatasetSpec spec;
      spec.name = Get<std::string>(d, "name", "datasets[]");
      spec.interactions_path =
          ResolvePath(Get<std::string>(d, "interactions_path", "datasets[]"), base_dir);
      spec.tables_path = ResolvePath(Get<std::string>(d, "tables_path", "datasets[]"), base_dir);
      if (d.contains("context_independent")) {
        spec.context_independent = Get<bool>(d, "context_independent", "datasets[]");
      }
      config.datasets.push_back(std::move(spec));
    }
  }
  if (doc.contains("prompts")) {
    const json &prompts = doc.at("prompts");
    if (!prompts.is_object()) throw FormatError("", "config.prompts must be an object");
    for (auto it = prompts.begin(); it != prompts.end(); ++it) {
      config.prompts[ParseTask(it.key())] = Get<std::string>(prompts, it.key().c_str(), "prompts");
    }
  }
  if (doc.contains("perturb") && !doc.at("perturb").is_null()) {
    const json &p = doc.at("perturb");
    RejectUnknownKeys(p, {"alpha", "beta", "seed"}, "perturb");
    PerturbConfig pc;
    if (p.contains("alpha")) pc.alpha = Get<double>(p, "alpha", "perturb");
    if (p.contains("beta")) pc.beta = Get<double>(p, "beta", "perturb");
    if (p.contains("seed")) pc.seed = Get<uint64_t>(p, "seed", "perturb");
    try {
      ValidatePerturbConfig(pc);
    } catch (const std::invalid_argument &e) {
      throw FormatError("", e.what());
    }
    config.perturb = pc;
  }
  if (doc.contains("separators")) {
    const json &s = doc.at("separators");
    RejectUnknownKeys(s, {"segment", "schema_prefix"}, "separators");
    if (s.contains("segment")) config.separators.segment = Get<std::string>(s, "segment", "separators");
    if (s.contains("schema_prefix")) {
      config.separators.schema_prefix = Get<std::string>(s, "schema_prefix", "separators");
    }
  }
  if (doc.contains("seed")) config.seed = Get<uint64_t>(doc, "seed", "config");
  if (doc.contains("skip_unparsable")) config.skip_unparsable = Get<bool>(doc, "skip_unparsable", "config");
  if (doc.contains("jobs")) config.jobs = Get<int>(doc, "jobs", "config");
  if (config.enabled_tasks.empty()) throw FormatError("", "enabled_tasks is empty");
  return config;
}

CorpusConfig LoadCorpusConfig(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error &e) {
    throw FormatError("", "config '" + path + "': " + e.what());
  }
  return CorpusConfigFromJson(doc, std::filesystem::path(path).parent_path().string());
}

// ---------------------------------------------------------------------------
// Interactions

namespace {

std::string IdString(const json &value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  throw FormatError("", "interaction id must be a string or integer");
}

std::string StringField(const json &obj, const char *key, const std::string &where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw FormatError("", where + ": missing string field '" + key + "'");
  }
  return it->get<std::string>();
}

Interaction RecordToInteraction(const json &record, size_t index) {
  if (!record.is_object()) throw FormatError("", "record " + std::to_string(index) + " is not an object");
  Interaction out;
  const std::string where = "record " + std::to_string(index);
  if (auto it = record.find("interaction"); it != record.end()) {
    if (!it->is_array()) throw FormatError("", where + ": 'interaction' must be an array");
    out.db_id = record.contains("database_id") ? StringField(record, "database_id", where)
                                               : StringField(record, "db_id", where);
    if (record.contains("interaction_id")) {
      out.id = IdString(record.at("interaction_id"));
    } else if (record.contains("id")) {
      out.id = IdString(record.at("id"));
    } else {
      out.id = std::to_string(index);
    }
    for (const json &turn : *it) {
      if (!turn.is_object()) throw FormatError(out.db_id, where + ": turn is not an object");
      out.turns.push_back({StringField(turn, "utterance", where), StringField(turn, "query", where)});
    }
    if (auto f = record.find("final"); f != record.end()) {
      if (f->is_object() && f->contains("utterance") && f->at("utterance").is_string()) {
        out.final_utterance = f->at("utterance").get<std::string>();
      } else if (f->is_string()) {
        out.final_utterance = f->get<std::string>();
      }
      if (out.final_utterance && out.final_utterance->empty()) out.final_utterance.reset();
    }
  } else if (record.contains("question") && record.contains("query")) {
    out.db_id = StringField(record, "db_id", where);
    out.id = std::to_string(index);
    out.turns.push_back({StringField(record, "question", where), StringField(record, "query", where)});
  } else {
    throw FormatError("", where + ": neither an interaction nor a question record");
  }
  if (out.turns.empty()) throw FormatError(out.db_id, where + ": interaction has no turns");
  return out;
}

}  // namespace

std::vector<Interaction> ParseInteractions(const json &doc, bool context_independent,
                                           const SchemaCatalog &schemas,
                                           bool skip_unparsable, size_t *skipped) {
  if (!doc.is_array()) throw FormatError("", "dataset root must be an array");
  std::vector<Interaction> out;
  size_t dropped = 0;
  for (size_t i = 0; i < doc.size(); ++i) {
    Interaction interaction = RecordToInteraction(doc[i], i);
    if (context_independent) {
      if (interaction.turns.size() != 1) {
        throw FormatError(interaction.db_id, "context-independent record " +
                                                 std::to_string(i) + " has several turns");
      }
      interaction.final_utterance.reset();
    }
    auto schema = schemas.find(interaction.db_id);
    if (schema == schemas.end()) {
      throw FormatError(interaction.db_id, "db_id not found in schema catalog");
    }
    bool ok = true;
    for (size_t t = 0; t < interaction.turns.size() && ok; ++t) {
      try {
        ParseSql(interaction.turns[t].gold_sql, &schema->second);
      } catch (const Error &e) {
        if (!skip_unparsable) throw ParseError(interaction.id, static_cast<int>(t + 1), e.what());
        ok = false;
      }
    }
    if (ok) {
      out.push_back(std::move(interaction));
    } else {
      ++dropped;
    }
  }
  if (skipped != nullptr) *skipped = dropped;
  return out;
}

std::vector<Interaction> LoadInteractions(const std::string &path, bool context_independent,
                                          const SchemaCatalog &schemas, bool skip_unparsable,
                                          size_t *skipped) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open dataset '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error &e) {
    throw FormatError("", "dataset '" + path + "': " + e.what());
  }
  return ParseInteractions(doc, context_independent, schemas, skip_unparsable, skipped);
}

// ---------------------------------------------------------------------------
// Samples

std::string BuildInput(const std::vector<std::pair<std::string, std::string>> &history,
                       const std::string &current_utterance, const DatabaseSchema &schema,
                       const Separators &separators) {
  std::string out;
  for (const auto &[utterance, sql] : history) {
    out += utterance;
    out += separators.segment;
    out += sql;
    out += separators.segment;
  }
  out += current_utterance;
  out += separators.schema_prefix;
  out += SerializeSchema(schema);
  return out;
}

namespace {

struct ParsedInteraction {
  std::vector<SqlQuery> canonical;
  std::vector<std::string> printed;
};

ParsedInteraction ParseTurns(const Interaction &interaction, const DatabaseSchema &schema) {
  ParsedInteraction out;
  for (size_t t = 0; t < interaction.turns.size(); ++t) {
    try {
      out.canonical.push_back(ParseCanonical(interaction.turns[t].gold_sql, schema));
    } catch (const Error &e) {
      throw ParseError(interaction.id, static_cast<int>(t + 1), e.what());
    }
    out.printed.push_back(PrintSql(out.canonical.back()));
  }
  return out;
}

TaskSample MakeSample(Task task, const CorpusConfig &config, const std::string &context,
                      std::string target, SampleMeta meta) {
  TaskSample s;
  s.task = task;
  s.prompt = config.Prompt(task);
  s.input = s.prompt + " " + context;
  s.target = std::move(target);
  s.meta = std::move(meta);
  return s;
}

}  // namespace

std::vector<TaskSample> MakeSamples(const Interaction &interaction, const DatabaseSchema &schema,
                                    const CorpusConfig &config, const std::string &dataset,
                                    bool context_independent) {
  const ParsedInteraction parsed = ParseTurns(interaction, schema);
  const auto enabled = [&](Task t) { return config.enabled_tasks.count(t) > 0; };
  auto meta_for = [&](size_t t) {
    return SampleMeta{dataset, interaction.db_id, interaction.id, static_cast<int>(t + 1), false};
  };

  std::vector<TaskSample> samples;
  std::vector<std::pair<std::string, std::string>> history;
  std::string context;
  for (size_t t = 0; t < interaction.turns.size(); ++t) {
    context = BuildInput(history, interaction.turns[t].utterance, schema, config.separators);
    if (enabled(Task::kSG)) {
      samples.push_back(MakeSample(Task::kSG, config, context, parsed.printed[t], meta_for(t)));
    }
    if (enabled(Task::kRSP)) {
      samples.push_back(MakeSample(Task::kRSP, config, context,
                                   SerializeRsp(ExtractRelatedSchema(parsed.canonical[t], schema)),
                                   meta_for(t)));
    }
    if (!context_independent && enabled(Task::kTWP) && t >= 1) {
      samples.push_back(MakeSample(
          Task::kTWP, config, context,
          SerializeTwp(ComputeTurnSwitch(parsed.canonical[t - 1], parsed.canonical[t], schema)),
          meta_for(t)));
    }
    history.emplace_back(interaction.turns[t].utterance, parsed.printed[t]);
  }
  if (!context_independent && enabled(Task::kFUP)) {
    if (std::optional<std::string> fup = BuildFupTarget(interaction)) {
      samples.push_back(MakeSample(Task::kFUP, config, context, *fup,
                                   meta_for(interaction.turns.size() - 1)));
    }
  }
  return samples;
}

// ---------------------------------------------------------------------------
// Corpus builders

namespace {

struct LoadedDataset {
  const DatasetSpec *spec;
  SchemaCatalog schemas;
  std::vector<Interaction> interactions;
  size_t skipped = 0;
};

std::vector<LoadedDataset> LoadDatasets(const CorpusConfig &config) {
  std::vector<LoadedDataset> out;
  for (const DatasetSpec &spec : config.datasets) {
    LoadedDataset d;
    d.spec = &spec;
    d.schemas = LoadSchemas(spec.tables_path);
    d.interactions = LoadInteractions(spec.interactions_path, spec.context_independent, d.schemas,
                                      config.skip_unparsable, &d.skipped);
    out.push_back(std::move(d));
  }
  return out;
}

struct WorkResult {
  std::vector<TaskSample> samples;
  PerturbationStats stats;
};

// Runs `work(dataset, interaction)` over every interaction on `jobs`
// threads; results come back in input order.
template <typename Fn>
std::vector<WorkResult> RunUnits(const std::vector<LoadedDataset> &datasets, int jobs, Fn work) {
  std::vector<std::pair<const LoadedDataset *, const Interaction *>> units;
  for (const LoadedDataset &d : datasets) {
    for (const Interaction &i : d.interactions) units.emplace_back(&d, &i);
  }
  std::vector<WorkResult> results(units.size());
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      const size_t k = next.fetch_add(1);
      if (k >= units.size()) return;
      try {
        results[k] = work(*units[k].first, *units[k].second);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = units.size();
      }
    }
  };
  const size_t n_threads = std::max<size_t>(1, std::min<size_t>(static_cast<size_t>(std::max(jobs, 1)), units.size()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (size_t i = 0; i < n_threads; ++i) threads.emplace_back(worker);
    for (std::thread &t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

const DatabaseSchema &SchemaFor(const LoadedDataset &d, const Interaction &i) {
  auto it = d.schemas.find(i.db_id);
  if (it == d.schemas.end()) throw FormatError(i.db_id, "db_id not found in schema catalog");
  return it->second;
}

Corpus Assemble(const std::string &stage, const CorpusConfig &config,
                const std::vector<LoadedDataset> &datasets, std::vector<WorkResult> results) {
  Corpus corpus;
  Manifest &m = corpus.manifest;
  m.stage = stage;
  m.seed = config.seed;
  for (const LoadedDataset &d : datasets) {
    m.interactions[d.spec->name] += d.interactions.size();
    m.skipped[d.spec->name] += d.skipped;
    for (const Interaction &i : d.interactions) m.turns[d.spec->name] += i.turns.size();
  }
  for (WorkResult &r : results) {
    m.perturbation.context_slots += r.stats.context_slots;
    m.perturbation.slots_selected += r.stats.slots_selected;
    m.perturbation.slots_altered += r.stats.slots_altered;
    for (TaskSample &s : r.samples) {
      ++m.counts[s.meta.dataset][TaskName(s.task)];
      corpus.samples.push_back(std::move(s));
    }
  }
  m.total = corpus.samples.size();
  Rng rng(DeriveSeed(config.seed, {"shuffle"}));
  rng.Shuffle(corpus.samples);
  return corpus;
}

}  // namespace

Corpus BuildPretrainCorpus(const CorpusConfig &config) {
  const std::vector<LoadedDataset> datasets = LoadDatasets(config);
  auto results = RunUnits(datasets, config.jobs, [&](const LoadedDataset &d, const Interaction &i) {
    return WorkResult{MakeSamples(i, SchemaFor(d, i), config, d.spec->name,
                                  d.spec->context_independent),
                      {}};
  });
  return Assemble("pretrain", config, datasets, std::move(results));
}

Corpus BuildFinetuneCorpus(const CorpusConfig &config) {
  if (!config.enabled_tasks.count(Task::kSG)) {
    throw FormatError("", "fine-tune corpus requires the SG task");
  }
  const PerturbConfig perturb = config.perturb.value_or(PerturbConfig{0.0, 0.0, config.seed});
  ValidatePerturbConfig(perturb);
  const std::vector<LoadedDataset> datasets = LoadDatasets(config);
  auto results = RunUnits(datasets, config.jobs, [&](const LoadedDataset &d, const Interaction &i) {
    const DatabaseSchema &schema = SchemaFor(d, i);
    const ParsedInteraction parsed = ParseTurns(i, schema);
    WorkResult out;
    for (size_t t = 0; t < i.turns.size(); ++t) {
      Rng rng(DeriveSeed(perturb.seed, {d.spec->name, i.id}, t + 1));
      std::vector<std::pair<std::string, std::string>> history;
      bool perturbed = false;
      for (size_t j = 0; j < t; ++j) {
        std::string sql = parsed.printed[j];
        ++out.stats.context_slots;
        if (rng.UniformDouble() < perturb.alpha) {
          ++out.stats.slots_selected;
          std::string replaced = PrintSql(PerturbSql(parsed.canonical[j], schema, perturb.beta, rng));
          if (replaced != sql) {
            ++out.stats.slots_altered;
            perturbed = true;
            sql = std::move(replaced);
          }
        }
        history.emplace_back(i.turns[j].utterance, std::move(sql));
      }
      SampleMeta meta{d.spec->name, i.db_id, i.id, static_cast<int>(t + 1), perturbed};
      out.samples.push_back(MakeSample(
          Task::kSG, config, BuildInput(history, i.turns[t].utterance, schema, config.separators),
          parsed.printed[t], std::move(meta)));
    }
    return out;
  });
  Corpus corpus = Assemble("finetune", config, datasets, std::move(results));
  corpus.manifest.perturb = perturb;
  return corpus;
}

// ---------------------------------------------------------------------------
// Serialization

ordered_json Manifest::ToJson() const {
  ordered_json j;
  j["stage"] = stage;
  j["seed"] = seed;
  j["total"] = total;
  j["counts"] = counts;
  j["interactions"] = interactions;
  j["turns"] = turns;
  j["skipped"] = skipped;
  if (perturb) {
    j["perturbation"] = {{"alpha", perturb->alpha},
                         {"beta", perturb->beta},
                         {"seed", perturb->seed},
                         {"context_slots", perturbation.context_slots},
                         {"slots_selected", perturbation.slots_selected},
                         {"slots_altered", perturbation.slots_altered}};
  }
  return j;
}

std::string SampleToJsonLine(const TaskSample &sample) {
  ordered_json j;
  j["task"] = TaskName(sample.task);
  j["prompt"] = sample.prompt;
  j["input"] = sample.input;
  j["target"] = sample.target;
  j["meta"] = {{"dataset", sample.meta.dataset},
               {"db_id", sample.meta.db_id},
               {"interaction_id", sample.meta.interaction_id},
               {"turn_index", sample.meta.turn_index},
               {"perturbed", sample.meta.perturbed}};
  return j.dump();
}

TaskSample SampleFromJson(const json &line) {
  try {
    TaskSample s;
    s.task = ParseTask(line.at("task").get<std::string>());
    s.prompt = line.at("prompt").get<std::string>();
    s.input = line.at("input").get<std::string>();
    s.target = line.at("target").get<std::string>();
    const json &meta = line.at("meta");
    s.meta.dataset = meta.at("dataset").get<std::string>();
    s.meta.db_id = meta.at("db_id").get<std::string>();
    s.meta.interaction_id = meta.at("interaction_id").get<std::string>();
    s.meta.turn_index = meta.at("turn_index").get<int>();
    s.meta.perturbed = meta.at("perturbed").get<bool>();
    return s;
  } catch (const json::exception &e) {
    throw FormatError("", std::string("malformed sample: ") + e.what());
  }
}

void WriteJsonl(const std::vector<TaskSample> &samples, std::ostream &out) {
  for (const TaskSample &s : samples) out << SampleToJsonLine(s) << '\n';
}

void WriteCorpusFiles(const Corpus &corpus, const std::string &jsonl_path,
                      const std::string &manifest_path) {
  std::ofstream out(jsonl_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + jsonl_path + "'");
  WriteJsonl(corpus.samples, out);
  if (!out) throw IoError("write failed for '" + jsonl_path + "'");
  std::ofstream manifest(manifest_path, std::ios::binary | std::ios::trunc);
  if (!manifest) throw IoError("cannot write '" + manifest_path + "'");
  manifest << corpus.manifest.ToJson().dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Statistics

uint64_t CorpusStats::Count(const std::string &dataset, Task task) const {
  auto d = by_task.find(dataset);
  if (d == by_task.end()) return 0;
  auto t = d->second.find(TaskName(task));
  return t == d->second.end() ? 0 : t->second;
}

uint64_t CorpusStats::TaskTotal(Task task) const {
  uint64_t total = 0;
  for (const auto &[dataset, tasks] : by_task) {
    if (auto it = tasks.find(TaskName(task)); it != tasks.end()) total += it->second;
  }
  return total;
}

ordered_json CorpusStats::ToJson() const {
  ordered_json j;
  j["samples"] = samples;
  j["questions"] = questions;
  j["interactions"] = interactions;
  ordered_json totals = ordered_json::object();
  for (Task t : {Task::kSG, Task::kRSP, Task::kTWP, Task::kFUP}) totals[TaskName(t)] = TaskTotal(t);
  j["tasks"] = totals;
  j["by_dataset"] = by_task;
  ordered_json turns = ordered_json::object();
  for (const auto &[task, per_turn] : by_turn) {
    ordered_json row = ordered_json::object();
    for (const auto &[turn, n] : per_turn) row[std::to_string(turn)] = n;
    turns[task] = row;
  }
  j["by_turn"] = turns;
  return j;
}

CorpusStats ComputeCorpusStats(std::istream &jsonl) {
  CorpusStats stats;
  std::set<std::pair<std::string, std::string>> interactions;
  std::string line;
  size_t line_no = 0;
  while (std::getline(jsonl, line)) {
    ++line_no;
    if (line.empty()) continue;
    TaskSample s;
    try {
      s = SampleFromJson(json::parse(line));
    } catch (const json::exception &e) {
      throw FormatError("", "line " + std::to_string(line_no) + ": " + e.what());
    } catch (const FormatError &e) {
      throw FormatError("", "line " + std::to_string(line_no) + ": " + e.detail());
    }
    ++stats.samples;
    ++stats.by_task[s.meta.dataset][TaskName(s.task)];
    ++stats.by_turn[TaskName(s.task)][s.meta.turn_index];
    if (s.task == Task::kSG) ++stats.questions;
    interactions.emplace(s.meta.dataset, s.meta.interaction_id);
  }
  stats.interactions = interactions.size();
  return stats;
}

CorpusStats ComputeCorpusStats(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus '" + path + "'");
  return ComputeCorpusStats(in);
}

}  // namespace convsql
