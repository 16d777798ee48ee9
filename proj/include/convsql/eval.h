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

// Question Match / Interaction Match scoring with exact set matching
// (values ignored), bucketed by turn index and by difficulty.

#ifndef CONVSQL_EVAL_H_
#define CONVSQL_EVAL_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "convsql/labels.h"
#include "convsql/schema.h"
#include "convsql/sql_ast.h"
#include "json.hpp"

namespace convsql {

enum class Difficulty { kEasy, kMedium, kHard, kExtra };

std::string DifficultyName(Difficulty d);

// Spider hardness rule; see docs/difficulty.md for the table.
Difficulty ClassifyDifficulty(const SqlQuery &query);

// Order-insensitive normal form: sets are sorted, literal values masked.
// Two canonical queries exact-match iff their keys are equal.
std::string MatchKey(const SqlQuery &canonical);

// Both queries are canonicalized against `schema` first.
bool ExactMatch(const SqlQuery &pred, const SqlQuery &gold, const DatabaseSchema &schema);

struct Bucket {
  uint64_t total = 0;
  uint64_t matched = 0;
  double Rate() const { return total == 0 ? 0.0 : static_cast<double>(matched) / total; }
};

struct TurnFailure {
  std::string interaction_id;
  int turn = 0;
  std::string reason;
};

struct EvalReport {
  double qm = 0.0;
  double im = 0.0;
  std::map<std::string, Bucket> per_turn;        // "1", "2", "3", "4+"
  std::map<std::string, Bucket> per_difficulty;  // easy, medium, hard, extra
  uint64_t n_questions = 0;
  uint64_t n_interactions = 0;
  uint64_t matched_questions = 0;
  uint64_t matched_interactions = 0;
  std::vector<TurnFailure> failures;

  nlohmann::ordered_json ToJson() const;
  std::string ToText() const;
};

// interaction id -> per-turn predicted SQL (turn 1 first).
using PredictionSet = std::map<std::string, std::vector<std::string>>;

// Unparsable predictions count as mismatches. Throws MissingPrediction if a
// gold turn has no prediction.
EvalReport Evaluate(const PredictionSet &predictions, const std::vector<Interaction> &gold,
                    const SchemaCatalog &schemas);

std::string TurnBucket(int turn_index);

// Predictions JSONL: {"interaction_id", "turn_index", "sql"} per line.
PredictionSet ReadPredictions(std::istream &in);
PredictionSet ReadPredictions(const std::string &path);
void WritePredictions(const PredictionSet &predictions,
                      const std::vector<std::string> &order, std::ostream &out);

}  // namespace convsql

#endif  // CONVSQL_EVAL_H_
