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

#include "convsql/perturb.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <type_traits>

namespace convsql {

void ValidatePerturbConfig(const PerturbConfig &config) {
  if (!(config.alpha >= 0.0 && config.alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  if (!(config.beta >= 0.0 && config.beta <= 1.0)) {
    throw std::invalid_argument("beta must lie in [0, 1]");
  }
}

std::string PerturbKindName(PerturbKind kind) {
  switch (kind) {
    case PerturbKind::kSelectColumnMod: return "select_column_mod";
    case PerturbKind::kJoinTableSwap: return "join_table_swap";
    case PerturbKind::kStarToColumn: return "star_to_column";
    case PerturbKind::kOrderDirectionSwap: return "order_direction_swap";
  }
  return "";
}

namespace {

// Calls `fn(core, clause)` for every SELECT core in pre-order. `clause` is
// the top-level slot containing the core, or kNone for the top-level body.
template <typename Query, typename Fn>
class CoreVisitor {
 public:
  using Core = std::conditional_t<std::is_const_v<Query>, const SelectCore, SelectCore>;
  using Cond = std::conditional_t<std::is_const_v<Query>, const Condition, Condition>;
  using Opnd = std::conditional_t<std::is_const_v<Query>, const Operand, Operand>;

  explicit CoreVisitor(Fn &fn) : fn_(fn) {}

  void VisitQuery(Query &q, ChangeTag clause) {
    VisitCore(q.body, clause);
    if (q.set_op) {
      VisitQuery(*q.set_op->right, clause == ChangeTag::kNone ? ChangeTag::kSetOp : clause);
    }
  }

 private:
  void VisitCore(Core &core, ChangeTag clause) {
    fn_(core, clause);
    const bool top = clause == ChangeTag::kNone;
    for (auto &t : core.from.tables) {
      if (t.is_derived()) VisitQuery(*t.subquery, top ? ChangeTag::kFrom : clause);
    }
    if (core.where) VisitCond(*core.where, top ? ChangeTag::kWhere : clause);
    if (core.having) VisitCond(*core.having, top ? ChangeTag::kHaving : clause);
  }

  void VisitCond(Cond &cond, ChangeTag clause) {
    if (cond.kind != Condition::Kind::kAtom) {
      for (auto &c : cond.children) VisitCond(c, clause);
      return;
    }
    VisitOperand(cond.atom.rhs, clause);
    if (cond.atom.upper) VisitOperand(*cond.atom.upper, clause);
  }

  void VisitOperand(Opnd &operand, ChangeTag clause) {
    if (auto *q = std::get_if<ValuePtr<SqlQuery>>(&operand.node)) VisitQuery(**q, clause);
  }

  Fn &fn_;
};

template <typename Query, typename Fn>
void ForEachCore(Query &query, Fn &&fn) {
  CoreVisitor<Query, std::remove_reference_t<Fn>> visitor(fn);
  visitor.VisitQuery(query, ChangeTag::kNone);
}

ChangeTag ClauseFor(ChangeTag enclosing, ChangeTag own) {
  return enclosing == ChangeTag::kNone ? own : enclosing;
}

// Column the item selects, possibly under an aggregate.
ColumnRef *ItemColumn(SelectItem &item) {
  if (auto *c = std::get_if<ColumnRef>(&item.expr.node)) return c;
  if (auto *a = std::get_if<Aggregate>(&item.expr.node)) return &a->arg;
  return nullptr;
}

std::vector<std::string> ColumnNames(const Table &table) {
  std::vector<std::string> out;
  for (const Column &c : table.columns) out.push_back(ToLower(c.name));
  return out;
}

}  // namespace

std::vector<PerturbSite> EnumerateSites(const SqlQuery &query,
                                        const DatabaseSchema &schema) {
  std::vector<PerturbSite> sites;
  size_t core_index = 0;
  ForEachCore(query, [&](const SelectCore &core, ChangeTag clause) {
    const size_t here = core_index++;
    for (size_t i = 0; i < core.select_items.size(); ++i) {
      SelectItem item = core.select_items[i];
      const ColumnRef *col = ItemColumn(item);
      if (col == nullptr) continue;
      if (col->is_star()) {
        PerturbSite site{PerturbKind::kStarToColumn, {here, i},
                         ClauseFor(clause, ChangeTag::kSelect), {}};
        for (const TableRef &t : core.from.tables) {
          if (t.is_derived()) continue;
          if (!col->qualifier.empty() && col->qualifier != t.name) continue;
          const Table *table = schema.FindTable(t.name);
          if (table == nullptr) continue;
          for (const std::string &name : ColumnNames(*table)) {
            PerturbAlternative alt{PerturbAlternative::Action::kReplaceColumn, {t.name, name}};
            if (std::find(site.alternatives.begin(), site.alternatives.end(), alt) ==
                site.alternatives.end()) {
              site.alternatives.push_back(std::move(alt));
            }
          }
        }
        if (!site.alternatives.empty()) sites.push_back(std::move(site));
        continue;
      }
      const Table *table = schema.FindTable(col->qualifier);
      if (table == nullptr) continue;
      PerturbSite site{PerturbKind::kSelectColumnMod, {here, i},
                       ClauseFor(clause, ChangeTag::kSelect), {}};
      std::vector<PerturbAlternative> appends;
      for (const std::string &name : ColumnNames(*table)) {
        if (name == col->column) continue;
        site.alternatives.push_back(
            {PerturbAlternative::Action::kReplaceColumn, {col->qualifier, name}});
        appends.push_back({PerturbAlternative::Action::kAppendColumn, {col->qualifier, name}});
      }
      if (site.alternatives.empty()) continue;
      site.alternatives.insert(site.alternatives.end(), appends.begin(), appends.end());
      sites.push_back(std::move(site));
    }
    for (size_t i = 0; i < core.from.join_conditions.size(); ++i) {
      const JoinCondition &jc = core.from.join_conditions[i];
      if (jc.left.qualifier == jc.right.qualifier) continue;
      const Table *left = schema.FindTable(jc.left.qualifier);
      const Table *right = schema.FindTable(jc.right.qualifier);
      // The swapped references must still resolve.
      if (left == nullptr || right == nullptr || !right->HasColumn(jc.left.column) ||
          !left->HasColumn(jc.right.column)) {
        continue;
      }
      sites.push_back({PerturbKind::kJoinTableSwap, {here, i},
                       ClauseFor(clause, ChangeTag::kFrom),
                       {{PerturbAlternative::Action::kSwapQualifiers, {}}}});
    }
    for (size_t i = 0; i < core.order_by.size(); ++i) {
      sites.push_back({PerturbKind::kOrderDirectionSwap, {here, i},
                       ClauseFor(clause, ChangeTag::kOrderBy),
                       {{PerturbAlternative::Action::kFlipDirection, {}}}});
    }
  });
  return sites;
}

void ApplySite(SqlQuery &query, const PerturbSite &site, size_t choice) {
  const PerturbAlternative &alt = site.alternatives.at(choice);
  size_t core_index = 0;
  ForEachCore(query, [&](SelectCore &core, ChangeTag) {
    if (core_index++ != site.location.core) return;
    const size_t i = site.location.index;
    switch (alt.action) {
      case PerturbAlternative::Action::kReplaceColumn:
        *ItemColumn(core.select_items.at(i)) = alt.column;
        break;
      case PerturbAlternative::Action::kAppendColumn:
        core.select_items.push_back(SelectItem{ValueExpr{alt.column}});
        break;
      case PerturbAlternative::Action::kSwapQualifiers: {
        JoinCondition &jc = core.from.join_conditions.at(i);
        std::swap(jc.left.qualifier, jc.right.qualifier);
        break;
      }
      case PerturbAlternative::Action::kFlipDirection: {
        OrderItem &item = core.order_by.at(i);
        item.dir = item.dir == SortDir::kAsc ? SortDir::kDesc : SortDir::kAsc;
        break;
      }
    }
  });
}

size_t PerturbBudget(const SqlQuery &query, double beta) {
  const size_t tokens = TokenizeSql(PrintSql(query)).size();
  const auto scaled = static_cast<size_t>(std::floor(beta * static_cast<double>(tokens)));
  return std::max<size_t>(1, scaled);
}

SqlQuery PerturbSql(const SqlQuery &query, const DatabaseSchema &schema,
                    double beta, Rng &rng, std::vector<PerturbSite> *applied) {
  SqlQuery out = Canonicalize(query, schema);
  std::vector<PerturbSite> sites = EnumerateSites(out, schema);
  if (applied != nullptr) applied->clear();
  if (sites.empty()) return out;
  const size_t count = std::min(PerturbBudget(out, beta), sites.size());
  // Partial Fisher-Yates: the first `count` entries are a uniform sample.
  std::vector<size_t> order(sites.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (size_t i = 0; i < count; ++i) {
    const size_t j = i + static_cast<size_t>(rng.UniformIndex(order.size() - i));
    std::swap(order[i], order[j]);
  }
  // Applied in traversal order so appended columns land deterministically.
  std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count));
  for (size_t i = 0; i < count; ++i) {
    const PerturbSite &site = sites[order[i]];
    const size_t choice = static_cast<size_t>(rng.UniformIndex(site.alternatives.size()));
    ApplySite(out, site, choice);
    if (applied != nullptr) applied->push_back(site);
  }
  return out;
}

}  // namespace convsql
