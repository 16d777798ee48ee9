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

// Auxiliary-task targets derived from gold SQL: related schema (tables and
// columns a query touches), turn switch (which clauses changed since the
// previous turn) and the final-utterance target.

#ifndef CONVSQL_LABELS_H_
#define CONVSQL_LABELS_H_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "convsql/schema.h"
#include "convsql/sql_ast.h"

namespace convsql {

struct Turn {
  std::string utterance;
  std::string gold_sql;
};

struct Interaction {
  std::string id;
  std::string db_id;
  std::vector<Turn> turns;
  std::optional<std::string> final_utterance;
};

struct RspLabel {
  std::vector<std::string> tables;   // first-appearance order
  std::vector<std::string> columns;  // "table.column", star excluded
  bool operator==(const RspLabel &) const = default;
};

// Declaration order is the serialization order.
enum class ChangeTag {
  kSelect,
  kFrom,
  kWhere,
  kGroupBy,
  kHaving,
  kOrderBy,
  kLimit,
  kSetOp,
  kNone,
};

struct TwpLabel {
  std::set<ChangeTag> changes;  // {kNone} when nothing changed
  bool operator==(const TwpLabel &) const = default;
};

// Tables and columns referenced anywhere in `query`, subqueries included,
// in the order they appear in the printed canonical query.
RspLabel ExtractRelatedSchema(const SqlQuery &query, const DatabaseSchema &schema);

// "t1 , t2 , t1.c1 , t2.c2"
std::string SerializeRsp(const RspLabel &label);

TwpLabel ComputeTurnSwitch(const SqlQuery &prev, const SqlQuery &curr,
                           const DatabaseSchema &schema);

std::string ChangeTagName(ChangeTag tag);  // "where change", "none", ...
std::string SerializeTwp(const TwpLabel &label);

// The interaction's final utterance, if it has a non-empty one.
std::optional<std::string> BuildFupTarget(const Interaction &interaction);

}  // namespace convsql

#endif  // CONVSQL_LABELS_H_
