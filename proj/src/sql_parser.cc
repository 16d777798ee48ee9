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

#include <charconv>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "convsql/errors.h"
#include "convsql/sql_ast.h"

namespace convsql {
namespace {

// Words that terminate an identifier position.
const std::set<std::string, std::less<>> kReserved = {
    "select", "from",  "where",   "group",  "by",     "having",   "order",
    "limit",  "join",  "on",      "as",     "and",    "or",       "not",
    "in",     "like",  "between", "distinct", "intersect", "union", "except",
    "asc",    "desc",  "inner"};

// Words that belong to SQL outside the supported dialect.
const std::set<std::string, std::less<>> kUnsupported = {
    "left",  "right", "outer", "full",  "cross",  "natural", "exists",
    "case",  "when",  "then",  "else",  "end",    "is",      "null",
    "cast",  "with",  "offset", "over", "partition", "using", "all",
    "insert", "update", "delete", "create", "drop", "alter", "values"};

std::optional<AggFunc> AggFromName(std::string_view word) {
  if (word == "max") return AggFunc::kMax;
  if (word == "min") return AggFunc::kMin;
  if (word == "count") return AggFunc::kCount;
  if (word == "sum") return AggFunc::kSum;
  if (word == "avg") return AggFunc::kAvg;
  return std::nullopt;
}

std::string Upper(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
    // Drop a single trailing semicolon.
    if (!tokens_.empty() && IsSymbolToken(tokens_.back(), ";")) {
      tokens_.pop_back();
    }
    lowered_.reserve(tokens_.size());
    for (const Token &t : tokens_) {
      lowered_.push_back(t.kind == Token::Kind::kWord ? ToLower(t.text) : t.text);
    }
  }

  SqlQuery ParseStatement() {
    SqlQuery q = ParseQuery();
    if (!AtEnd()) Fail("end of query");
    return q;
  }

 private:
  static bool IsSymbolToken(const Token &t, std::string_view s) {
    return t.kind == Token::Kind::kSymbol && t.text == s;
  }

  bool AtEnd(size_t ahead = 0) const { return pos_ + ahead >= tokens_.size(); }

  bool IsWord(std::string_view w, size_t ahead = 0) const {
    return !AtEnd(ahead) && tokens_[pos_ + ahead].kind == Token::Kind::kWord &&
           lowered_[pos_ + ahead] == w;
  }

  bool IsSymbol(std::string_view s, size_t ahead = 0) const {
    return !AtEnd(ahead) && IsSymbolToken(tokens_[pos_ + ahead], s);
  }

  bool AcceptWord(std::string_view w) {
    if (!IsWord(w)) return false;
    ++pos_;
    return true;
  }

  bool AcceptSymbol(std::string_view s) {
    if (!IsSymbol(s)) return false;
    ++pos_;
    return true;
  }

  void ExpectWord(std::string_view w) {
    if (!AcceptWord(w)) Fail("'" + std::string(w) + "'");
  }

  void ExpectSymbol(std::string_view s) {
    if (!AcceptSymbol(s)) Fail("'" + std::string(s) + "'");
  }

  [[noreturn]] void Fail(const std::string &expected) const {
    if (AtEnd()) {
      const size_t end = tokens_.empty()
                             ? 0
                             : tokens_.back().position + tokens_.back().text.size();
      throw SyntaxError(end, expected, "<end>");
    }
    const Token &t = tokens_[pos_];
    if (t.kind == Token::Kind::kWord && kUnsupported.count(lowered_[pos_])) {
      throw UnsupportedFeature(Upper(lowered_[pos_]));
    }
    throw SyntaxError(t.position, expected, t.text);
  }

  // A plain (non-reserved) identifier, lowercased.
  bool IsIdentifier(size_t ahead = 0) const {
    return !AtEnd(ahead) && tokens_[pos_ + ahead].kind == Token::Kind::kWord &&
           !kReserved.count(lowered_[pos_ + ahead]) &&
           !kUnsupported.count(lowered_[pos_ + ahead]);
  }

  std::string ExpectIdentifier(const char *what) {
    if (!IsIdentifier()) Fail(what);
    return lowered_[pos_++];
  }

  SqlQuery ParseQuery() {
    SqlQuery q;
    q.body = ParseCore();
    std::optional<SetOperator> op;
    if (IsWord("intersect")) op = SetOperator::kIntersect;
    if (IsWord("union")) op = SetOperator::kUnion;
    if (IsWord("except")) op = SetOperator::kExcept;
    if (op) {
      ++pos_;
      if (IsWord("all")) throw UnsupportedFeature("UNION ALL");
      q.set_op = SetOp{*op, ParseQuery()};
    }
    return q;
  }

  SqlQuery ParseParenthesizedQuery() {
    ExpectSymbol("(");
    SqlQuery q = ParseQuery();
    ExpectSymbol(")");
    return q;
  }

  SelectCore ParseCore() {
    SelectCore core;
    ExpectWord("select");
    core.distinct = AcceptWord("distinct");
    do {
      core.select_items.push_back(ParseSelectItem());
    } while (AcceptSymbol(","));
    if (IsWord("as")) throw UnsupportedFeature("SELECT item alias");
    if (!IsWord("from")) {
      if (AtEnd() || IsSymbol(")") || IsWord("intersect") || IsWord("union") ||
          IsWord("except") || IsWord("where") || IsWord("order") ||
          IsWord("group") || IsWord("limit")) {
        throw UnsupportedFeature("SELECT without FROM");
      }
      Fail("'from'");
    }
    ++pos_;
    core.from = ParseFrom();
    if (AcceptWord("where")) core.where = ParseCondition();
    if (AcceptWord("group")) {
      ExpectWord("by");
      do {
        core.group_by.push_back(ParseColumnRef(/*allow_star=*/false));
      } while (AcceptSymbol(","));
    }
    if (IsWord("having")) {
      if (core.group_by.empty()) {
        throw UnsupportedFeature("HAVING without GROUP BY");
      }
      ++pos_;
      core.having = ParseCondition();
    }
    if (AcceptWord("order")) {
      ExpectWord("by");
      do {
        OrderItem item;
        item.expr = ParseValueExpr();
        if (AcceptWord("desc")) {
          item.dir = SortDir::kDesc;
        } else {
          AcceptWord("asc");
        }
        core.order_by.push_back(std::move(item));
      } while (AcceptSymbol(","));
    }
    if (AcceptWord("limit")) {
      if (AtEnd() || tokens_[pos_].kind != Token::Kind::kNumber) {
        Fail("non-negative integer");
      }
      const std::string &text = tokens_[pos_].text;
      int64_t value = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        Fail("non-negative integer");
      }
      ++pos_;
      core.limit = value;
    }
    return core;
  }

  SelectItem ParseSelectItem() {
    if (AcceptSymbol("*")) return SelectItem{ValueExpr{ColumnRef{"", std::string(kStar)}}};
    return SelectItem{ParseValueExpr()};
  }

  FromClause ParseFrom() {
    FromClause from;
    std::set<std::string> aliases;
    auto add_source = [&]() {
      const size_t at = AtEnd() ? 0 : tokens_[pos_].position;
      TableRef ref = ParseTableSource();
      if (!ref.alias.empty() && !aliases.insert(ref.alias).second) {
        throw SyntaxError(at, "unique table alias", ref.alias);
      }
      from.tables.push_back(std::move(ref));
    };
    add_source();
    for (;;) {
      if (IsSymbol(",")) throw UnsupportedFeature("comma join");
      if (IsWord("inner") && IsWord("join", 1)) ++pos_;
      if (!AcceptWord("join")) break;
      add_source();
      if (AcceptWord("on")) {
        do {
          JoinCondition cond;
          cond.join_index = from.tables.size() - 1;
          if (!IsIdentifier()) throw UnsupportedFeature("non-column ON condition");
          cond.left = ParseColumnRef(false);
          if (!AcceptSymbol("=")) throw UnsupportedFeature("non-equality ON condition");
          if (!IsIdentifier()) throw UnsupportedFeature("non-column ON condition");
          cond.right = ParseColumnRef(false);
          from.join_conditions.push_back(std::move(cond));
        } while (AcceptWord("and"));
      }
    }
    return from;
  }

  TableRef ParseTableSource() {
    TableRef ref;
    if (IsSymbol("(")) {
      if (!IsWord("select", 1)) Fail("subquery");
      ref.subquery = ParseParenthesizedQuery();
    } else {
      ref.name = ExpectIdentifier("table name");
    }
    if (AcceptWord("as")) {
      ref.alias = ExpectIdentifier("alias");
    } else if (IsIdentifier()) {
      ref.alias = lowered_[pos_++];
    }
    return ref;
  }

  ColumnRef ParseColumnRef(bool allow_star) {
    ColumnRef ref;
    std::string first = ExpectIdentifier("column name");
    if (AcceptSymbol(".")) {
      ref.qualifier = std::move(first);
      if (allow_star && AcceptSymbol("*")) {
        ref.column = std::string(kStar);
      } else {
        ref.column = ExpectIdentifier("column name");
      }
    } else {
      ref.column = std::move(first);
    }
    return ref;
  }

  ValueExpr ParseValueExpr() {
    ValueExpr lhs = ParseTerm();
    for (;;) {
      ArithOp op;
      if (IsSymbol("+")) {
        op = ArithOp::kAdd;
      } else if (IsSymbol("-")) {
        op = ArithOp::kSub;
      } else {
        return lhs;
      }
      ++pos_;
      ValueExpr rhs = ParseTerm();
      lhs = ValueExpr{Arithmetic{op, std::move(lhs), std::move(rhs)}};
    }
  }

  ValueExpr ParseTerm() {
    ValueExpr lhs = ParseFactor();
    for (;;) {
      ArithOp op;
      if (IsSymbol("*")) {
        op = ArithOp::kMul;
      } else if (IsSymbol("/")) {
        op = ArithOp::kDiv;
      } else {
        return lhs;
      }
      ++pos_;
      ValueExpr rhs = ParseFactor();
      lhs = ValueExpr{Arithmetic{op, std::move(lhs), std::move(rhs)}};
    }
  }

  ValueExpr ParseFactor() {
    if (AtEnd()) Fail("expression");
    const Token &t = tokens_[pos_];
    if (IsSymbol("(")) {
      if (IsWord("select", 1)) throw UnsupportedFeature("scalar subquery in expression");
      ++pos_;
      ValueExpr inner = ParseValueExpr();
      ExpectSymbol(")");
      return inner;
    }
    if (IsSymbol("-") && !AtEnd(1) && tokens_[pos_ + 1].kind == Token::Kind::kNumber) {
      pos_ += 2;
      return ValueExpr{Literal{"-" + tokens_[pos_ - 1].text, false}};
    }
    if (t.kind == Token::Kind::kNumber) {
      ++pos_;
      return ValueExpr{Literal{t.text, false}};
    }
    if (t.kind == Token::Kind::kString) {
      ++pos_;
      return ValueExpr{Literal{t.text, true}};
    }
    if (t.kind == Token::Kind::kWord && IsSymbol("(", 1)) {
      std::optional<AggFunc> agg = AggFromName(lowered_[pos_]);
      if (!agg) throw UnsupportedFeature("function " + Upper(lowered_[pos_]));
      pos_ += 2;
      Aggregate a;
      a.func = *agg;
      a.distinct = AcceptWord("distinct");
      if (AcceptSymbol("*")) {
        a.arg = ColumnRef{"", std::string(kStar)};
      } else {
        if (!IsIdentifier()) {
          if (IsWord("select") || IsSymbol("(")) {
            throw UnsupportedFeature("expression inside aggregate");
          }
          Fail("column name");
        }
        a.arg = ParseColumnRef(/*allow_star=*/true);
      }
      if (!IsSymbol(")")) {
        if (IsSymbol("+") || IsSymbol("-") || IsSymbol("*") || IsSymbol("/")) {
          throw UnsupportedFeature("expression inside aggregate");
        }
        Fail("')'");
      }
      ++pos_;
      return ValueExpr{std::move(a)};
    }
    if (IsIdentifier()) {
      // "t.*" only appears as a select item.
      if (IsSymbol(".", 1) && IsSymbol("*", 2)) {
        ColumnRef ref{lowered_[pos_], std::string(kStar)};
        pos_ += 3;
        return ValueExpr{std::move(ref)};
      }
      return ValueExpr{ParseColumnRef(false)};
    }
    Fail("expression");
  }

  // Condition grammar: or-list of and-lists of primaries; parentheses
  // group sub-conditions.
  Condition ParseCondition() {
    std::vector<Condition> parts;
    parts.push_back(ParseAndCondition());
    while (AcceptWord("or")) parts.push_back(ParseAndCondition());
    return Combine(Condition::Kind::kOr, std::move(parts));
  }

  Condition ParseAndCondition() {
    std::vector<Condition> parts;
    parts.push_back(ParseConditionPrimary());
    while (AcceptWord("and")) parts.push_back(ParseConditionPrimary());
    return Combine(Condition::Kind::kAnd, std::move(parts));
  }

  static Condition Combine(Condition::Kind kind, std::vector<Condition> parts) {
    if (parts.size() == 1) return std::move(parts.front());
    Condition out;
    out.kind = kind;
    for (Condition &p : parts) {
      if (p.kind == kind) {
        for (Condition &c : p.children) out.children.push_back(std::move(c));
      } else {
        out.children.push_back(std::move(p));
      }
    }
    return out;
  }

  Condition ParseConditionPrimary() {
    if (IsWord("not")) throw UnsupportedFeature("NOT condition");
    if (IsSymbol("(") && !IsWord("select", 1)) {
      const size_t saved = pos_;
      try {
        ++pos_;
        Condition inner = ParseCondition();
        ExpectSymbol(")");
        return inner;
      } catch (const SyntaxError &) {
        pos_ = saved;  // a parenthesized value expression, not a group
      }
    }
    Condition atom;
    atom.atom = ParsePredicate();
    return atom;
  }

  Predicate ParsePredicate() {
    Predicate p;
    p.lhs = ParseValueExpr();
    if (AtEnd()) Fail("comparison operator");
    if (AcceptWord("not")) {
      if (AcceptWord("in")) {
        p.op = CompareOp::kNotIn;
      } else if (AcceptWord("like")) {
        p.op = CompareOp::kNotLike;
      } else if (IsWord("between")) {
        throw UnsupportedFeature("NOT BETWEEN");
      } else {
        Fail("'in' or 'like'");
      }
    } else if (AcceptWord("between")) {
      p.op = CompareOp::kBetween;
    } else if (AcceptWord("in")) {
      p.op = CompareOp::kIn;
    } else if (AcceptWord("like")) {
      p.op = CompareOp::kLike;
    } else if (AcceptSymbol("=")) {
      p.op = CompareOp::kEq;
    } else if (AcceptSymbol("!=") || AcceptSymbol("<>")) {
      p.op = CompareOp::kNe;
    } else if (AcceptSymbol("<")) {
      p.op = CompareOp::kLt;
    } else if (AcceptSymbol("<=")) {
      p.op = CompareOp::kLe;
    } else if (AcceptSymbol(">")) {
      p.op = CompareOp::kGt;
    } else if (AcceptSymbol(">=")) {
      p.op = CompareOp::kGe;
    } else {
      Fail("comparison operator");
    }
    if ((p.op == CompareOp::kIn || p.op == CompareOp::kNotIn) &&
        !(IsSymbol("(") && IsWord("select", 1))) {
      throw UnsupportedFeature("IN value list");
    }
    p.rhs = ParseOperand();
    if (p.op == CompareOp::kBetween) {
      ExpectWord("and");
      p.upper = ParseOperand();
    }
    return p;
  }

  Operand ParseOperand() {
    if (IsSymbol("(") && IsWord("select", 1)) {
      return Operand{ValuePtr<SqlQuery>(ParseParenthesizedQuery())};
    }
    return Operand{ParseValueExpr()};
  }

  std::vector<Token> tokens_;
  std::vector<std::string> lowered_;
  size_t pos_ = 0;
};

}  // namespace

SqlQuery ParseSql(std::string_view text, const DatabaseSchema *schema) {
  Parser parser(TokenizeSql(text));
  SqlQuery q = parser.ParseStatement();
  if (schema != nullptr) ResolveSql(q, *schema);
  return q;
}

SqlQuery ParseCanonical(std::string_view text, const DatabaseSchema &schema) {
  return Canonicalize(ParseSql(text), schema);
}

bool SelectItem::is_star() const {
  if (const ColumnRef *c = expr.column()) return c->is_star();
  if (const Aggregate *a = expr.aggregate()) return a->arg.is_star();
  return false;
}

}  // namespace convsql
