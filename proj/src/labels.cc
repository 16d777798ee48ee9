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

#include "convsql/labels.h"

#include <algorithm>
#include <functional>
#include <string>

namespace convsql {
namespace {

// Visits table names and column references in the order PrintSql emits
// them.
class ReferenceWalker {
 public:
  ReferenceWalker(std::function<void(const std::string &)> on_table,
                  std::function<void(const ColumnRef &)> on_column)
      : on_table_(std::move(on_table)), on_column_(std::move(on_column)) {}

  void Query(const SqlQuery &q) {
    Core(q.body);
    if (q.set_op) Query(*q.set_op->right);
  }

 private:
  void Core(const SelectCore &core) {
    for (const SelectItem &item : core.select_items) Value(item.expr);
    for (size_t i = 0; i < core.from.tables.size(); ++i) {
      const TableRef &t = core.from.tables[i];
      if (t.is_derived()) {
        Query(*t.subquery);
      } else {
        on_table_(t.name);
      }
      for (const JoinCondition &jc : core.from.join_conditions) {
        if (jc.join_index != i) continue;
        Column(jc.left);
        Column(jc.right);
      }
    }
    if (core.where) Cond(*core.where);
    for (const ColumnRef &c : core.group_by) Column(c);
    if (core.having) Cond(*core.having);
    for (const OrderItem &item : core.order_by) Value(item.expr);
  }

  void Cond(const Condition &cond) {
    if (cond.kind != Condition::Kind::kAtom) {
      for (const Condition &c : cond.children) Cond(c);
      return;
    }
    Value(cond.atom.lhs);
    Operand(cond.atom.rhs);
    if (cond.atom.upper) Operand(*cond.atom.upper);
  }

  void Operand(const convsql::Operand &operand) {
    if (const SqlQuery *q = operand.query()) {
      Query(*q);
    } else {
      Value(*operand.value());
    }
  }

  void Value(const ValueExpr &expr) {
    if (const ColumnRef *c = expr.column()) {
      Column(*c);
    } else if (const Aggregate *a = expr.aggregate()) {
      Column(a->arg);
    } else if (const Arithmetic *arith = expr.arithmetic()) {
      Value(*arith->lhs);
      Value(*arith->rhs);
    }
  }

  void Column(const ColumnRef &c) {
    if (!c.qualifier.empty()) on_table_(c.qualifier);
    on_column_(c);
  }

  std::function<void(const std::string &)> on_table_;
  std::function<void(const ColumnRef &)> on_column_;
};

void AppendUnique(std::vector<std::string> &list, const std::string &value) {
  if (std::find(list.begin(), list.end(), value) == list.end()) list.push_back(value);
}

}  // namespace

RspLabel ExtractRelatedSchema(const SqlQuery &query, const DatabaseSchema &schema) {
  const SqlQuery canonical = Canonicalize(query, schema);
  RspLabel label;
  ReferenceWalker walker(
      [&](const std::string &table) { AppendUnique(label.tables, table); },
      [&](const ColumnRef &c) {
        if (!c.is_star()) AppendUnique(label.columns, c.qualifier + "." + c.column);
      });
  walker.Query(canonical);
  return label;
}

std::string SerializeRsp(const RspLabel &label) {
  std::string out;
  auto add = [&out](const std::string &item) {
    if (!out.empty()) out += kSchemaItemSeparator;
    out += item;
  };
  for (const std::string &t : label.tables) add(t);
  for (const std::string &c : label.columns) add(c);
  return out;
}

TwpLabel ComputeTurnSwitch(const SqlQuery &prev, const SqlQuery &curr,
                           const DatabaseSchema &schema) {
  const SqlQuery a = Canonicalize(prev, schema);
  const SqlQuery b = Canonicalize(curr, schema);
  TwpLabel label;
  auto check = [&](ChangeTag tag, const std::string &x, const std::string &y) {
    if (x != y) label.changes.insert(tag);
  };
  check(ChangeTag::kSelect, PrintSelectClause(a.body), PrintSelectClause(b.body));
  check(ChangeTag::kFrom, PrintFromClause(a.body.from), PrintFromClause(b.body.from));
  check(ChangeTag::kWhere, PrintWhereClause(a.body), PrintWhereClause(b.body));
  check(ChangeTag::kGroupBy, PrintGroupByClause(a.body), PrintGroupByClause(b.body));
  check(ChangeTag::kHaving, PrintHavingClause(a.body), PrintHavingClause(b.body));
  check(ChangeTag::kOrderBy, PrintOrderByClause(a.body), PrintOrderByClause(b.body));
  check(ChangeTag::kLimit, PrintLimitClause(a.body), PrintLimitClause(b.body));
  check(ChangeTag::kSetOp, PrintSetOpClause(a), PrintSetOpClause(b));
  if (label.changes.empty()) label.changes.insert(ChangeTag::kNone);
  return label;
}

std::string ChangeTagName(ChangeTag tag) {
  switch (tag) {
    case ChangeTag::kSelect: return "select change";
    case ChangeTag::kFrom: return "from change";
    case ChangeTag::kWhere: return "where change";
    case ChangeTag::kGroupBy: return "group by change";
    case ChangeTag::kHaving: return "having change";
    case ChangeTag::kOrderBy: return "order by change";
    case ChangeTag::kLimit: return "limit change";
    case ChangeTag::kSetOp: return "set op change";
    case ChangeTag::kNone: return "none";
  }
  return "";
}

std::string SerializeTwp(const TwpLabel &label) {
  std::string out;
  for (ChangeTag tag : label.changes) {
    if (!out.empty()) out += " </s> ";
    out += ChangeTagName(tag);
  }
  return out;
}

std::optional<std::string> BuildFupTarget(const Interaction &interaction) {
  if (interaction.final_utterance && !interaction.final_utterance->empty()) {
    return interaction.final_utterance;
  }
  return std::nullopt;
}

}  // namespace convsql
