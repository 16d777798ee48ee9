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

// Structural SQL perturbations used to corrupt previous-turn context SQL:
// select-column modification, join qualifier swap, star-to-column, and
// order direction swap.

#ifndef CONVSQL_PERTURB_H_
#define CONVSQL_PERTURB_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "convsql/labels.h"
#include "convsql/rng.h"
#include "convsql/schema.h"
#include "convsql/sql_ast.h"

namespace convsql {

struct PerturbConfig {
  double alpha = 0.15;  // per context-slot replacement probability
  double beta = 0.15;   // fraction of SQL tokens setting the site budget
  uint64_t seed = 0;
};

// Throws std::invalid_argument when alpha or beta is outside [0, 1].
void ValidatePerturbConfig(const PerturbConfig &config);

enum class PerturbKind {
  kSelectColumnMod,
  kJoinTableSwap,
  kStarToColumn,
  kOrderDirectionSwap,
};

std::string PerturbKindName(PerturbKind kind);

// Addresses one element of one SELECT core. Cores are numbered in
// pre-order (body, FROM subqueries, WHERE subqueries, HAVING subqueries,
// then the set-operation operand); perturbations never change that
// numbering.
struct SiteLocation {
  size_t core = 0;
  size_t index = 0;  // select item, join condition or order item
  bool operator==(const SiteLocation &) const = default;
};

struct PerturbAlternative {
  enum class Action { kReplaceColumn, kAppendColumn, kSwapQualifiers, kFlipDirection };
  Action action = Action::kReplaceColumn;
  ColumnRef column;  // replacement or appended column
  bool operator==(const PerturbAlternative &) const = default;
};

struct PerturbSite {
  PerturbKind kind;
  SiteLocation location;
  ChangeTag clause;  // top-level clause whose printed form the site alters
  std::vector<PerturbAlternative> alternatives;
};

// All applicable sites of a canonical query, in traversal order.
std::vector<PerturbSite> EnumerateSites(const SqlQuery &query,
                                        const DatabaseSchema &schema);

// Applies alternative `choice` of `site` in place.
void ApplySite(SqlQuery &query, const PerturbSite &site, size_t choice);

// max(1, floor(beta * token_count(print(query)))).
size_t PerturbBudget(const SqlQuery &query, double beta);

// Picks min(budget, |sites|) distinct sites uniformly without replacement
// and applies them in traversal order, each with a uniformly chosen
// alternative. Returns the query unchanged when no site exists. If
// `applied` is non-null it receives the chosen sites.
SqlQuery PerturbSql(const SqlQuery &query, const DatabaseSchema &schema,
                    double beta, Rng &rng,
                    std::vector<PerturbSite> *applied = nullptr);

}  // namespace convsql

#endif  // CONVSQL_PERTURB_H_
