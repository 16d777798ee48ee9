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

// Interaction-level inference: each turn's input chains the model's own
// earlier predictions (never gold SQL) into the context.

#ifndef CONVSQL_INFER_H_
#define CONVSQL_INFER_H_

#include <chrono>
#include <memory>
#include <string>
#include <vector>

#include "convsql/corpus.h"
#include "convsql/eval.h"
#include "convsql/labels.h"
#include "convsql/schema.h"

namespace convsql {

struct ModelEndpoint {
  // "http://host:port" or a stub spec: "gold-echo", "constant:<sql>",
  // "fail-at:<interaction_id>:<turn>", "fail-all".
  std::string transport;
  std::chrono::milliseconds timeout{30000};
  int max_retries = 2;
};

struct GenerationRequest {
  std::string input;  // the only field that goes over the wire
  std::string interaction_id;
  int turn_index = 1;
};

// Implementations must be safe to call from several threads at once.
class Generator {
 public:
  virtual ~Generator() = default;
  // Returns the raw model output; throws EndpointError on failure.
  virtual std::string Generate(const GenerationRequest &request) const = 0;
};

// POST {base_url}/generate with {"input": ...}; expects {"output": ...}.
class HttpGenerator : public Generator {
 public:
  HttpGenerator(std::string base_url, std::chrono::milliseconds timeout);
  std::string Generate(const GenerationRequest &request) const override;

  // Wire encoding shared with the model server.
  static std::string EncodeRequest(const std::string &input);
  static std::string DecodeResponse(const std::string &body);  // throws EndpointError

 private:
  std::string base_url_;
  std::chrono::milliseconds timeout_;
};

// Answers every turn with its gold SQL.
class GoldEchoStub : public Generator {
 public:
  explicit GoldEchoStub(const std::vector<Interaction> &gold);
  std::string Generate(const GenerationRequest &request) const override;

 private:
  PredictionSet gold_;
};

class ConstantStub : public Generator {
 public:
  explicit ConstantStub(std::string sql) : sql_(std::move(sql)) {}
  std::string Generate(const GenerationRequest &) const override { return sql_; }

 private:
  std::string sql_;
};

// Fails on one (interaction, turn) and delegates everything else. An
// interaction id of "*" matches every interaction.
class FailAtStub : public Generator {
 public:
  FailAtStub(std::unique_ptr<Generator> inner, std::string interaction_id, int turn)
      : inner_(std::move(inner)), interaction_id_(std::move(interaction_id)), turn_(turn) {}
  std::string Generate(const GenerationRequest &request) const override;

 private:
  std::unique_ptr<Generator> inner_;
  std::string interaction_id_;
  int turn_;
};

class FailingStub : public Generator {
 public:
  std::string Generate(const GenerationRequest &request) const override;
};

// Builds the generator named by `endpoint.transport`. Stubs that need gold
// SQL read it from `gold`. Throws std::invalid_argument on an unknown spec.
std::unique_ptr<Generator> MakeGenerator(const ModelEndpoint &endpoint,
                                         const std::vector<Interaction> &gold);

struct TurnError {
  std::string interaction_id;
  int turn = 0;
  std::string cause;
};

struct InteractionResult {
  std::vector<std::string> predictions;  // one per gold turn, raw output
  std::vector<std::string> inputs;       // request payload per turn
  std::vector<double> latencies_ms;      // per call, retries included
  std::vector<TurnError> errors;
};

InteractionResult RunInteraction(const Generator &generator, const Interaction &interaction,
                                 const DatabaseSchema &schema, const CorpusConfig &config,
                                 int max_retries = 0);

struct InferenceRun {
  PredictionSet predictions;
  std::vector<std::string> order;  // interaction ids in input order
  std::vector<double> latencies_ms;
  std::vector<TurnError> errors;
};

// Interactions run concurrently (at most `jobs` at once); turns within an
// interaction run strictly in order.
InferenceRun RunDataset(const Generator &generator, const std::vector<Interaction> &interactions,
                        const SchemaCatalog &schemas, const CorpusConfig &config,
                        int max_retries = 0, int jobs = 1);

void WritePredictions(const InferenceRun &run, std::ostream &out);

}  // namespace convsql

#endif  // CONVSQL_INFER_H_
