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

// AST, lexer, parser, printer and canonicalizer for the SQL dialect used by
// the Spider family of text-to-SQL datasets.
//
// Supported: SELECT [DISTINCT] with aggregates (MAX/MIN/COUNT/SUM/AVG,
// optionally DISTINCT) and + - * / arithmetic; FROM with inner JOIN chains
// and ON column equalities; subqueries in FROM, WHERE and HAVING;
// WHERE/GROUP BY/HAVING/ORDER BY/LIMIT; INTERSECT/UNION/EXCEPT. Anything
// else raises UnsupportedFeature.
//
// Identifiers are case-insensitive and stored lowercase. String literals
// are kept verbatim, quotes included.

#ifndef CONVSQL_SQL_AST_H_
#define CONVSQL_SQL_AST_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "convsql/schema.h"
#include "convsql/value_ptr.h"

namespace convsql {

enum class AggFunc { kNone, kMax, kMin, kCount, kSum, kAvg };
enum class ArithOp { kAdd, kSub, kMul, kDiv };
enum class CompareOp {
  kEq, kNe, kLt, kLe, kGt, kGe, kBetween, kIn, kNotIn, kLike, kNotLike
};
enum class SortDir { kAsc, kDesc };
enum class SetOperator { kIntersect, kUnion, kExcept };

inline constexpr std::string_view kStar = "*";

struct ColumnRef {
  std::string qualifier;  // table name or alias; empty when unqualified
  std::string column;     // column name or "*"

  bool is_star() const { return column == kStar; }
  bool operator==(const ColumnRef &) const = default;
};

struct Literal {
  std::string text;  // as written; strings include their quotes
  bool is_string = false;
  bool operator==(const Literal &) const = default;
};

// Aggregates nest at most one level: the argument is a plain column.
struct Aggregate {
  AggFunc func = AggFunc::kCount;
  bool distinct = false;
  ColumnRef arg;
  bool operator==(const Aggregate &) const = default;
};

struct ValueExpr;

struct Arithmetic {
  ArithOp op = ArithOp::kAdd;
  ValuePtr<ValueExpr> lhs;
  ValuePtr<ValueExpr> rhs;
  bool operator==(const Arithmetic &) const = default;
};

struct ValueExpr {
  std::variant<ColumnRef, Literal, Aggregate, Arithmetic> node;

  const ColumnRef *column() const { return std::get_if<ColumnRef>(&node); }
  const Literal *literal() const { return std::get_if<Literal>(&node); }
  const Aggregate *aggregate() const { return std::get_if<Aggregate>(&node); }
  const Arithmetic *arithmetic() const {
    return std::get_if<Arithmetic>(&node);
  }
  bool operator==(const ValueExpr &) const = default;
};

struct SqlQuery;

// Right-hand side of a predicate: a value or a parenthesized subquery.
struct Operand {
  std::variant<ValueExpr, ValuePtr<SqlQuery>> node;

  const ValueExpr *value() const { return std::get_if<ValueExpr>(&node); }
  const SqlQuery *query() const {
    auto *q = std::get_if<ValuePtr<SqlQuery>>(&node);
    return q != nullptr ? q->get() : nullptr;
  }
  bool operator==(const Operand &) const = default;
};

struct Predicate {
  ValueExpr lhs;
  CompareOp op = CompareOp::kEq;
  Operand rhs;
  std::optional<Operand> upper;  // BETWEEN only
  bool operator==(const Predicate &) const = default;
};

// AND/OR tree. Parsing flattens same-kind nesting, so an AND node never has
// an AND child and an OR node never has an OR child.
struct Condition {
  enum class Kind { kAtom, kAnd, kOr };
  Kind kind = Kind::kAtom;
  Predicate atom;
  std::vector<Condition> children;
  bool operator==(const Condition &) const = default;
};

struct SelectItem {
  ValueExpr expr;

  AggFunc agg() const {
    const Aggregate *a = expr.aggregate();
    return a != nullptr ? a->func : AggFunc::kNone;
  }
  // True for "*", "t.*" and aggregates over them such as count(*).
  bool is_star() const;
  bool operator==(const SelectItem &) const = default;
};

struct TableRef {
  std::string name;   // empty for a derived table
  std::string alias;  // empty when absent
  ValuePtr<SqlQuery> subquery;

  bool is_derived() const { return static_cast<bool>(subquery); }
  bool operator==(const TableRef &) const = default;
};

struct JoinCondition {
  ColumnRef left;
  ColumnRef right;
  size_t join_index = 1;  // tables[join_index] carries this ON clause
  bool operator==(const JoinCondition &) const = default;
};

struct FromClause {
  std::vector<TableRef> tables;
  std::vector<JoinCondition> join_conditions;
  bool operator==(const FromClause &) const = default;
};

struct OrderItem {
  ValueExpr expr;
  SortDir dir = SortDir::kAsc;
  bool operator==(const OrderItem &) const = default;
};

struct SelectCore {
  bool distinct = false;
  std::vector<SelectItem> select_items;
  FromClause from;
  std::optional<Condition> where;
  std::vector<ColumnRef> group_by;
  std::optional<Condition> having;
  std::vector<OrderItem> order_by;
  std::optional<int64_t> limit;
  bool operator==(const SelectCore &) const = default;
};

struct SetOp {
  SetOperator op = SetOperator::kUnion;
  ValuePtr<SqlQuery> right;
  bool operator==(const SetOp &) const = default;
};

struct SqlQuery {
  SelectCore body;
  std::optional<SetOp> set_op;
  bool operator==(const SqlQuery &) const = default;
};

// ---------------------------------------------------------------------------
// Lexing

struct Token {
  enum class Kind { kWord, kNumber, kString, kSymbol };
  Kind kind;
  std::string text;
  size_t position;
};

// Throws LexError on empty input or on characters outside the dialect.
std::vector<Token> TokenizeSql(std::string_view text);
std::vector<std::string> TokenTexts(std::string_view text);

// ---------------------------------------------------------------------------
// Parsing, printing, canonicalization

// When `schema` is given every table and column must resolve against it.
SqlQuery ParseSql(std::string_view text,
                  const DatabaseSchema *schema = nullptr);

// Checks that all identifiers resolve; throws UnknownIdentifier otherwise.
void ResolveSql(const SqlQuery &query, const DatabaseSchema &schema);

// Rewrites every qualifier to its resolved table name (unqualified columns
// gain one), drops table aliases, and strips leading zeros from numbers.
SqlQuery Canonicalize(const SqlQuery &query, const DatabaseSchema &schema);

// ParseSql + Canonicalize.
SqlQuery ParseCanonical(std::string_view text, const DatabaseSchema &schema);

// Lowercase keywords, single spaces; "t.c" and "count(*)" stay compact.
std::string PrintSql(const SqlQuery &query);

// Per-clause printers; each returns "" for an absent clause.
std::string PrintValue(const ValueExpr &expr);
std::string PrintColumn(const ColumnRef &column);
std::string PrintCondition(const Condition &cond);
std::string PrintSelectClause(const SelectCore &core);
std::string PrintFromClause(const FromClause &from);
std::string PrintWhereClause(const SelectCore &core);
std::string PrintGroupByClause(const SelectCore &core);
std::string PrintHavingClause(const SelectCore &core);
std::string PrintOrderByClause(const SelectCore &core);
std::string PrintLimitClause(const SelectCore &core);
std::string PrintSetOpClause(const SqlQuery &query);

std::string_view AggName(AggFunc func);
std::string_view CompareOpName(CompareOp op);
std::string_view SetOperatorName(SetOperator op);

}  // namespace convsql

#endif  // CONVSQL_SQL_AST_H_
