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

#include <string>

#include "convsql/sql_ast.h"

namespace convsql {

std::string_view AggName(AggFunc func) {
  switch (func) {
    case AggFunc::kMax: return "max";
    case AggFunc::kMin: return "min";
    case AggFunc::kCount: return "count";
    case AggFunc::kSum: return "sum";
    case AggFunc::kAvg: return "avg";
    case AggFunc::kNone: break;
  }
  return "";
}

std::string_view CompareOpName(CompareOp op) {
  switch (op) {
    case CompareOp::kEq: return "=";
    case CompareOp::kNe: return "!=";
    case CompareOp::kLt: return "<";
    case CompareOp::kLe: return "<=";
    case CompareOp::kGt: return ">";
    case CompareOp::kGe: return ">=";
    case CompareOp::kBetween: return "between";
    case CompareOp::kIn: return "in";
    case CompareOp::kNotIn: return "not in";
    case CompareOp::kLike: return "like";
    case CompareOp::kNotLike: return "not like";
  }
  return "";
}

std::string_view SetOperatorName(SetOperator op) {
  switch (op) {
    case SetOperator::kIntersect: return "intersect";
    case SetOperator::kUnion: return "union";
    case SetOperator::kExcept: return "except";
  }
  return "";
}

namespace {

int Precedence(ArithOp op) {
  return op == ArithOp::kAdd || op == ArithOp::kSub ? 1 : 2;
}

char ArithSymbol(ArithOp op) {
  switch (op) {
    case ArithOp::kAdd: return '+';
    case ArithOp::kSub: return '-';
    case ArithOp::kMul: return '*';
    case ArithOp::kDiv: return '/';
  }
  return '?';
}

std::string PrintOperand(const Operand &operand) {
  if (const SqlQuery *q = operand.query()) return "(" + PrintSql(*q) + ")";
  return PrintValue(*operand.value());
}

std::string PrintPredicate(const Predicate &p) {
  std::string out = PrintValue(p.lhs);
  out += ' ';
  out += CompareOpName(p.op);
  out += ' ';
  out += PrintOperand(p.rhs);
  if (p.upper) {
    out += " and ";
    out += PrintOperand(*p.upper);
  }
  return out;
}

std::string JoinList(const std::vector<std::string> &parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string PrintCore(const SelectCore &core) {
  std::string out = PrintSelectClause(core);
  out += ' ';
  out += PrintFromClause(core.from);
  for (const std::string &clause :
       {PrintWhereClause(core), PrintGroupByClause(core), PrintHavingClause(core),
        PrintOrderByClause(core), PrintLimitClause(core)}) {
    if (!clause.empty()) {
      out += ' ';
      out += clause;
    }
  }
  return out;
}

}  // namespace

std::string PrintColumn(const ColumnRef &column) {
  if (column.qualifier.empty()) return column.column;
  return column.qualifier + "." + column.column;
}

std::string PrintValue(const ValueExpr &expr) {
  if (const ColumnRef *c = expr.column()) return PrintColumn(*c);
  if (const Literal *l = expr.literal()) return l->text;
  if (const Aggregate *a = expr.aggregate()) {
    std::string out(AggName(a->func));
    out += '(';
    if (a->distinct) out += "distinct ";
    out += PrintColumn(a->arg);
    out += ')';
    return out;
  }
  const Arithmetic &arith = *expr.arithmetic();
  const int prec = Precedence(arith.op);
  auto side = [&](const ValueExpr &child, bool right) {
    std::string text = PrintValue(child);
    if (const Arithmetic *inner = child.arithmetic()) {
      const int child_prec = Precedence(inner->op);
      if (child_prec < prec || (right && child_prec == prec)) {
        return "(" + text + ")";
      }
    }
    return text;
  };
  return side(*arith.lhs, false) + " " + ArithSymbol(arith.op) + " " +
         side(*arith.rhs, true);
}

std::string PrintCondition(const Condition &cond) {
  switch (cond.kind) {
    case Condition::Kind::kAtom:
      return PrintPredicate(cond.atom);
    case Condition::Kind::kAnd: {
      std::vector<std::string> parts;
      for (const Condition &c : cond.children) {
        std::string text = PrintCondition(c);
        parts.push_back(c.kind == Condition::Kind::kOr ? "(" + text + ")" : text);
      }
      return JoinList(parts, " and ");
    }
    case Condition::Kind::kOr: {
      std::vector<std::string> parts;
      for (const Condition &c : cond.children) {
        // An OR child of OR cannot occur after parsing, but parenthesize
        // anyway so hand-built trees print unambiguously.
        std::string text = PrintCondition(c);
        parts.push_back(c.kind == Condition::Kind::kOr ? "(" + text + ")" : text);
      }
      return JoinList(parts, " or ");
    }
  }
  return "";
}

std::string PrintSelectClause(const SelectCore &core) {
  std::vector<std::string> items;
  for (const SelectItem &item : core.select_items) items.push_back(PrintValue(item.expr));
  return std::string(core.distinct ? "select distinct " : "select ") +
         JoinList(items, ", ");
}

std::string PrintFromClause(const FromClause &from) {
  std::string out = "from ";
  for (size_t i = 0; i < from.tables.size(); ++i) {
    const TableRef &t = from.tables[i];
    if (i > 0) out += " join ";
    out += t.is_derived() ? "(" + PrintSql(*t.subquery) + ")" : t.name;
    if (!t.alias.empty()) {
      out += " as ";
      out += t.alias;
    }
    std::vector<std::string> conds;
    for (const JoinCondition &jc : from.join_conditions) {
      if (jc.join_index == i) {
        conds.push_back(PrintColumn(jc.left) + " = " + PrintColumn(jc.right));
      }
    }
    if (!conds.empty()) {
      out += " on ";
      out += JoinList(conds, " and ");
    }
  }
  return out;
}

std::string PrintWhereClause(const SelectCore &core) {
  return core.where ? "where " + PrintCondition(*core.where) : "";
}

std::string PrintGroupByClause(const SelectCore &core) {
  if (core.group_by.empty()) return "";
  std::vector<std::string> cols;
  for (const ColumnRef &c : core.group_by) cols.push_back(PrintColumn(c));
  return "group by " + JoinList(cols, ", ");
}

std::string PrintHavingClause(const SelectCore &core) {
  return core.having ? "having " + PrintCondition(*core.having) : "";
}

std::string PrintOrderByClause(const SelectCore &core) {
  if (core.order_by.empty()) return "";
  std::vector<std::string> items;
  for (const OrderItem &item : core.order_by) {
    items.push_back(PrintValue(item.expr) +
                    (item.dir == SortDir::kDesc ? " desc" : " asc"));
  }
  return "order by " + JoinList(items, ", ");
}

std::string PrintLimitClause(const SelectCore &core) {
  return core.limit ? "limit " + std::to_string(*core.limit) : "";
}

std::string PrintSetOpClause(const SqlQuery &query) {
  if (!query.set_op) return "";
  return std::string(SetOperatorName(query.set_op->op)) + " " +
         PrintSql(*query.set_op->right);
}

std::string PrintSql(const SqlQuery &query) {
  std::string out = PrintCore(query.body);
  if (query.set_op) {
    out += ' ';
    out += PrintSetOpClause(query);
  }
  return out;
}

}  // namespace convsql
