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
#include <vector>

#include "convsql/errors.h"
#include "convsql/sql_ast.h"

namespace convsql {
namespace {

struct ScopeEntry {
  std::string alias;  // empty when the table has none
  std::string name;   // lowercase schema table name
  const Table *table;
};

// Base tables visible from one SELECT core, chained to the enclosing core
// for correlated references. Derived tables contribute no columns.
struct Scope {
  const Scope *parent = nullptr;
  std::vector<ScopeEntry> entries;
};

std::string NormalizeNumber(const std::string &text) {
  std::string sign;
  std::string digits = text;
  if (!digits.empty() && digits[0] == '-') {
    sign = "-";
    digits.erase(0, 1);
  }
  size_t strip = 0;
  while (strip + 1 < digits.size() && digits[strip] == '0' &&
         digits[strip + 1] != '.') {
    ++strip;
  }
  return sign + digits.substr(strip);
}

class Canonicalizer {
 public:
  explicit Canonicalizer(const DatabaseSchema &schema) : schema_(schema) {}

  void Query(SqlQuery &q, const Scope *parent) {
    Core(q.body, parent);
    if (q.set_op) Query(*q.set_op->right, parent);
  }

 private:
  void Core(SelectCore &core, const Scope *parent) {
    Scope scope{parent, {}};
    for (TableRef &t : core.from.tables) {
      if (t.is_derived()) {
        Query(*t.subquery, parent);
      } else {
        const Table *table = schema_.FindTable(t.name);
        if (table == nullptr) throw UnknownIdentifier(t.name);
        t.name = ToLower(table->name);
        scope.entries.push_back({t.alias, t.name, table});
      }
      t.alias.clear();
    }
    for (SelectItem &item : core.select_items) Value(item.expr, scope);
    for (JoinCondition &jc : core.from.join_conditions) {
      Column(jc.left, scope);
      Column(jc.right, scope);
    }
    if (core.where) Cond(*core.where, scope);
    for (ColumnRef &c : core.group_by) Column(c, scope);
    if (core.having) Cond(*core.having, scope);
    for (OrderItem &item : core.order_by) Value(item.expr, scope);
  }

  void Cond(Condition &cond, const Scope &scope) {
    if (cond.kind != Condition::Kind::kAtom) {
      for (Condition &c : cond.children) Cond(c, scope);
      return;
    }
    Value(cond.atom.lhs, scope);
    Operand(cond.atom.rhs, scope);
    if (cond.atom.upper) Operand(*cond.atom.upper, scope);
  }

  void Operand(convsql::Operand &operand, const Scope &scope) {
    if (auto *q = std::get_if<ValuePtr<SqlQuery>>(&operand.node)) {
      Query(**q, &scope);
    } else {
      Value(std::get<ValueExpr>(operand.node), scope);
    }
  }

  void Value(ValueExpr &expr, const Scope &scope) {
    if (auto *c = std::get_if<ColumnRef>(&expr.node)) {
      Column(*c, scope);
    } else if (auto *l = std::get_if<Literal>(&expr.node)) {
      if (!l->is_string) l->text = NormalizeNumber(l->text);
    } else if (auto *a = std::get_if<Aggregate>(&expr.node)) {
      Column(a->arg, scope);
    } else {
      auto &arith = std::get<Arithmetic>(expr.node);
      Value(*arith.lhs, scope);
      Value(*arith.rhs, scope);
    }
  }

  void Column(ColumnRef &ref, const Scope &scope) {
    if (ref.is_star()) {
      if (!ref.qualifier.empty()) ref.qualifier = ResolveQualifier(ref.qualifier, scope)->name;
      return;
    }
    if (!ref.qualifier.empty()) {
      const ScopeEntry *entry = ResolveQualifier(ref.qualifier, scope);
      if (!entry->table->HasColumn(ref.column)) {
        throw UnknownIdentifier(ref.qualifier + "." + ref.column);
      }
      ref.qualifier = entry->name;
      ref.column = ToLower(ref.column);
      return;
    }
    for (const Scope *s = &scope; s != nullptr; s = s->parent) {
      for (const ScopeEntry &e : s->entries) {
        if (e.table->HasColumn(ref.column)) {
          ref.qualifier = e.name;
          ref.column = ToLower(ref.column);
          return;
        }
      }
    }
    throw UnknownIdentifier(ref.column);
  }

  // Aliases win over table names; inner scopes win over outer ones.
  const ScopeEntry *ResolveQualifier(const std::string &qualifier,
                                     const Scope &scope) const {
    for (const Scope *s = &scope; s != nullptr; s = s->parent) {
      for (const ScopeEntry &e : s->entries) {
        if (!e.alias.empty() && e.alias == qualifier) return &e;
      }
      for (const ScopeEntry &e : s->entries) {
        if (e.name == ToLower(qualifier)) return &e;
      }
    }
    throw UnknownIdentifier(qualifier);
  }

  const DatabaseSchema &schema_;
};

}  // namespace

SqlQuery Canonicalize(const SqlQuery &query, const DatabaseSchema &schema) {
  SqlQuery out = query;
  Canonicalizer(schema).Query(out, nullptr);
  return out;
}

void ResolveSql(const SqlQuery &query, const DatabaseSchema &schema) {
  (void)Canonicalize(query, schema);
}

}  // namespace convsql
