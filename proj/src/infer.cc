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

#include "convsql/infer.h"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "convsql/errors.h"

namespace convsql {

GoldEchoStub::GoldEchoStub(const std::vector<Interaction> &gold) {
  for (const Interaction &i : gold) {
    std::vector<std::string> &turns = gold_[i.id];
    for (const Turn &t : i.turns) turns.push_back(t.gold_sql);
  }
}

std::string GoldEchoStub::Generate(const GenerationRequest &request) const {
  auto it = gold_.find(request.interaction_id);
  if (it == gold_.end() || request.turn_index < 1 ||
      static_cast<size_t>(request.turn_index) > it->second.size()) {
    throw EndpointError(request.turn_index, "gold-echo has no gold SQL for interaction '" +
                                                request.interaction_id + "'");
  }
  return it->second[static_cast<size_t>(request.turn_index - 1)];
}

std::string FailAtStub::Generate(const GenerationRequest &request) const {
  if ((interaction_id_ == "*" || request.interaction_id == interaction_id_) &&
      request.turn_index == turn_) {
    throw EndpointError(request.turn_index, "injected failure");
  }
  return inner_->Generate(request);
}

std::string FailingStub::Generate(const GenerationRequest &request) const {
  throw EndpointError(request.turn_index, "endpoint unavailable");
}

std::unique_ptr<Generator> MakeGenerator(const ModelEndpoint &endpoint,
                                         const std::vector<Interaction> &gold) {
  const std::string &spec = endpoint.transport;
  if (spec.rfind("http://", 0) == 0 || spec.rfind("https://", 0) == 0) {
    if (endpoint.timeout.count() <= 0) throw std::invalid_argument("timeout must be positive");
    return std::make_unique<HttpGenerator>(spec, endpoint.timeout);
  }
  if (spec == "gold-echo") return std::make_unique<GoldEchoStub>(gold);
  if (spec == "fail-all") return std::make_unique<FailingStub>();
  if (spec.rfind("constant:", 0) == 0) return std::make_unique<ConstantStub>(spec.substr(9));
  if (spec.rfind("fail-at:", 0) == 0) {
    const std::string rest = spec.substr(8);
    const size_t colon = rest.rfind(':');
    if (colon == std::string::npos || colon == 0) {
      throw std::invalid_argument("fail-at stub expects fail-at:<interaction_id>:<turn>");
    }
    int turn = 0;
    try {
      turn = std::stoi(rest.substr(colon + 1));
    } catch (const std::exception &) {
      throw std::invalid_argument("fail-at stub: bad turn number");
    }
    return std::make_unique<FailAtStub>(std::make_unique<GoldEchoStub>(gold),
                                        rest.substr(0, colon), turn);
  }
  throw std::invalid_argument("unknown endpoint or stub '" + spec + "'");
}

InteractionResult RunInteraction(const Generator &generator, const Interaction &interaction,
                                 const DatabaseSchema &schema, const CorpusConfig &config,
                                 int max_retries) {
  InteractionResult result;
  std::vector<std::pair<std::string, std::string>> history;
  const std::string &prompt = config.Prompt(Task::kSG);
  for (size_t t = 0; t < interaction.turns.size(); ++t) {
    GenerationRequest request;
    request.interaction_id = interaction.id;
    request.turn_index = static_cast<int>(t + 1);
    request.input = prompt + " " +
                    BuildInput(history, interaction.turns[t].utterance, schema, config.separators);
    std::string output;
    std::string last_error;
    bool ok = false;
    for (int attempt = 0; attempt <= std::max(0, max_retries) && !ok; ++attempt) {
      const auto start = std::chrono::steady_clock::now();
      try {
        output = generator.Generate(request);
        ok = true;
      } catch (const std::exception &e) {
        last_error = e.what();
      }
      result.latencies_ms.push_back(
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
    }
    if (!ok) {
      result.errors.push_back({interaction.id, request.turn_index, last_error});
      output.clear();
    }
    result.inputs.push_back(std::move(request.input));
    result.predictions.push_back(output);
    history.emplace_back(interaction.turns[t].utterance, std::move(output));
  }
  return result;
}

InferenceRun RunDataset(const Generator &generator, const std::vector<Interaction> &interactions,
                        const SchemaCatalog &schemas, const CorpusConfig &config, int max_retries,
                        int jobs) {
  std::vector<InteractionResult> results(interactions.size());
  std::vector<std::string> setup_errors(interactions.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t k = next.fetch_add(1);
      if (k >= interactions.size()) return;
      const Interaction &interaction = interactions[k];
      auto schema = schemas.find(interaction.db_id);
      if (schema == schemas.end()) {
        setup_errors[k] = interaction.db_id;
        continue;
      }
      results[k] = RunInteraction(generator, interaction, schema->second, config, max_retries);
    }
  };
  const size_t n_threads =
      std::clamp<size_t>(static_cast<size_t>(std::max(jobs, 1)), 1, std::max<size_t>(1, interactions.size()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (size_t i = 0; i < n_threads; ++i) threads.emplace_back(worker);
    for (std::thread &t : threads) t.join();
  }
  for (const std::string &db : setup_errors) {
    if (!db.empty()) throw FormatError(db, "db_id not found in schema catalog");
  }
  InferenceRun run;
  for (size_t k = 0; k < interactions.size(); ++k) {
    InteractionResult &r = results[k];
    run.order.push_back(interactions[k].id);
    run.predictions[interactions[k].id] = std::move(r.predictions);
    run.latencies_ms.insert(run.latencies_ms.end(), r.latencies_ms.begin(), r.latencies_ms.end());
    run.errors.insert(run.errors.end(), r.errors.begin(), r.errors.end());
  }
  return run;
}

void WritePredictions(const InferenceRun &run, std::ostream &out) {
  WritePredictions(run.predictions, run.order, out);
}

}  // namespace convsql
