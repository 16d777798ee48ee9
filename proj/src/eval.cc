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

#include "convsql/eval.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "convsql/errors.h"

namespace convsql {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string DifficultyName(Difficulty d) {
  switch (d) {
    case Difficulty::kEasy: return "easy";
    case Difficulty::kMedium: return "medium";
    case Difficulty::kHard: return "hard";
    case Difficulty::kExtra: return "extra";
  }
  return "";
}

// ---------------------------------------------------------------------------
// Difficulty

namespace {

void CollectAtoms(const Condition &cond, std::vector<const Condition *> &atoms) {
  if (cond.kind == Condition::Kind::kAtom) {
    atoms.push_back(&cond);
    return;
  }
  for (const Condition &c : cond.children) CollectAtoms(c, atoms);
}

int CountOr(const Condition &cond) {
  if (cond.kind == Condition::Kind::kAtom) return 0;
  int n = cond.kind == Condition::Kind::kOr ? static_cast<int>(cond.children.size()) - 1 : 0;
  for (const Condition &c : cond.children) n += CountOr(c);
  return n;
}

int CountAggregates(const ValueExpr &expr) {
  if (expr.aggregate() != nullptr) return 1;
  if (const Arithmetic *a = expr.arithmetic()) {
    return CountAggregates(*a->lhs) + CountAggregates(*a->rhs);
  }
  return 0;
}

}  // namespace

Difficulty ClassifyDifficulty(const SqlQuery &query) {
  const SelectCore &core = query.body;
  std::vector<const Condition *> where_atoms;
  std::vector<const Condition *> having_atoms;
  if (core.where) CollectAtoms(*core.where, where_atoms);
  if (core.having) CollectAtoms(*core.having, having_atoms);

  int component1 = 0;
  if (core.where) ++component1;
  if (!core.group_by.empty()) ++component1;
  if (!core.order_by.empty()) ++component1;
  if (core.limit) ++component1;
  component1 += static_cast<int>(core.from.tables.size()) - 1;
  if (core.where) component1 += CountOr(*core.where);
  if (core.having) component1 += CountOr(*core.having);
  int component2 = query.set_op ? 1 : 0;
  int aggregates = 0;
  for (const auto *atoms : {&where_atoms, &having_atoms}) {
    for (const Condition *c : *atoms) {
      const CompareOp op = c->atom.op;
      if (op == CompareOp::kLike || op == CompareOp::kNotLike) ++component1;
      if (c->atom.rhs.query() != nullptr) ++component2;
      if (c->atom.upper && c->atom.upper->query() != nullptr) ++component2;
      aggregates += CountAggregates(c->atom.lhs);
    }
  }
  for (const SelectItem &item : core.select_items) aggregates += CountAggregates(item.expr);
  for (const OrderItem &item : core.order_by) aggregates += CountAggregates(item.expr);

  int others = 0;
  if (aggregates > 1) ++others;
  if (core.select_items.size() > 1) ++others;
  if (where_atoms.size() > 1) ++others;
  if (core.group_by.size() > 1) ++others;

  if (component1 <= 1 && others == 0 && component2 == 0) return Difficulty::kEasy;
  if ((others <= 2 && component1 <= 1 && component2 == 0) ||
      (component1 <= 2 && others < 2 && component2 == 0)) {
    return Difficulty::kMedium;
  }
  if ((others > 2 && component1 <= 2 && component2 == 0) ||
      (component1 > 2 && component1 <= 3 && others <= 2 && component2 == 0) ||
      (component1 <= 1 && others == 0 && component2 <= 1)) {
    return Difficulty::kHard;
  }
  return Difficulty::kExtra;
}

// ---------------------------------------------------------------------------
// Exact set match

namespace {

std::string Joined(std::vector<std::string> parts, bool sort, bool unique) {
  if (sort) std::sort(parts.begin(), parts.end());
  if (unique) parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += ", ";
    out += parts[i];
  }
  return out;
}

std::string ValueKey(const ValueExpr &expr) {
  if (expr.literal() != nullptr) return "value";
  if (const Arithmetic *a = expr.arithmetic()) {
    static constexpr const char *kOps[] = {"+", "-", "*", "/"};
    return "(" + ValueKey(*a->lhs) + " " + kOps[static_cast<int>(a->op)] + " " +
           ValueKey(*a->rhs) + ")";
  }
  return PrintValue(expr);
}

std::string OperandKey(const Operand &operand) {
  if (const SqlQuery *q = operand.query()) return "(" + MatchKey(*q) + ")";
  return ValueKey(*operand.value());
}

std::string CondKey(const Condition &cond) {
  if (cond.kind == Condition::Kind::kAtom) {
    std::string out = ValueKey(cond.atom.lhs) + " " + std::string(CompareOpName(cond.atom.op)) +
                      " " + OperandKey(cond.atom.rhs);
    if (cond.atom.upper) out += " and " + OperandKey(*cond.atom.upper);
    return out;
  }
  std::vector<std::string> parts;
  for (const Condition &c : cond.children) parts.push_back(CondKey(c));
  return (cond.kind == Condition::Kind::kAnd ? "and{" : "or{") + Joined(parts, true, true) + "}";
}

std::string CoreKey(const SelectCore &core) {
  std::vector<std::string> items;
  for (const SelectItem &item : core.select_items) items.push_back(ValueKey(item.expr));
  std::vector<std::string> tables;
  for (const TableRef &t : core.from.tables) {
    tables.push_back(t.is_derived() ? "(" + MatchKey(*t.subquery) + ")" : t.name);
  }
  std::vector<std::string> joins;
  for (const JoinCondition &jc : core.from.join_conditions) {
    std::string a = PrintColumn(jc.left);
    std::string b = PrintColumn(jc.right);
    if (b < a) std::swap(a, b);
    joins.push_back(a + " = " + b);
  }
  std::vector<std::string> groups;
  for (const ColumnRef &c : core.group_by) groups.push_back(PrintColumn(c));
  std::vector<std::string> order;
  for (const OrderItem &item : core.order_by) {
    order.push_back(ValueKey(item.expr) + (item.dir == SortDir::kDesc ? " desc" : " asc"));
  }
  std::string key = "select ";
  if (core.distinct) key += "distinct ";
  key += Joined(items, true, false);
  key += " | from " + Joined(tables, true, true);
  key += " | on " + Joined(joins, true, true);
  key += " | where " + (core.where ? CondKey(*core.where) : "");
  key += " | group " + Joined(groups, true, true);
  key += " | having " + (core.having ? CondKey(*core.having) : "");
  key += " | order " + Joined(order, false, false);
  key += " | limit " + (core.limit ? std::to_string(*core.limit) : "");
  return key;
}

}  // namespace

std::string MatchKey(const SqlQuery &canonical) {
  std::string key = "{" + CoreKey(canonical.body) + "}";
  if (canonical.set_op) {
    key += " " + std::string(SetOperatorName(canonical.set_op->op)) + " " +
           MatchKey(*canonical.set_op->right);
  }
  return key;
}

bool ExactMatch(const SqlQuery &pred, const SqlQuery &gold, const DatabaseSchema &schema) {
  return MatchKey(Canonicalize(pred, schema)) == MatchKey(Canonicalize(gold, schema));
}

// ---------------------------------------------------------------------------
// Evaluation

std::string TurnBucket(int turn_index) {
  return turn_index >= 4 ? "4+" : std::to_string(turn_index);
}

EvalReport Evaluate(const PredictionSet &predictions, const std::vector<Interaction> &gold,
                    const SchemaCatalog &schemas) {
  EvalReport report;
  for (const char *b : {"1", "2", "3", "4+"}) report.per_turn[b];
  for (Difficulty d : {Difficulty::kEasy, Difficulty::kMedium, Difficulty::kHard, Difficulty::kExtra}) {
    report.per_difficulty[DifficultyName(d)];
  }
  for (const Interaction &interaction : gold) {
    auto schema_it = schemas.find(interaction.db_id);
    if (schema_it == schemas.end()) {
      throw FormatError(interaction.db_id, "db_id not found in schema catalog");
    }
    const DatabaseSchema &schema = schema_it->second;
    auto pred_it = predictions.find(interaction.id);
    bool all_matched = true;
    for (size_t t = 0; t < interaction.turns.size(); ++t) {
      const int turn = static_cast<int>(t + 1);
      if (pred_it == predictions.end() || t >= pred_it->second.size()) {
        throw MissingPrediction(interaction.id, turn);
      }
      SqlQuery gold_sql;
      try {
        gold_sql = ParseCanonical(interaction.turns[t].gold_sql, schema);
      } catch (const Error &e) {
        throw ParseError(interaction.id, turn, e.what());
      }
      const std::string &pred_text = pred_it->second[t];
      bool matched = false;
      std::string reason;
      if (pred_text.find_first_not_of(" \t\r\n") == std::string::npos) {
        reason = "empty prediction";
      } else {
        try {
          matched = MatchKey(ParseCanonical(pred_text, schema)) == MatchKey(gold_sql);
          if (!matched) reason = "mismatch";
        } catch (const Error &e) {
          reason = std::string("unparsable: ") + e.what();
        }
      }
      Bucket &turn_bucket = report.per_turn[TurnBucket(turn)];
      Bucket &difficulty_bucket = report.per_difficulty[DifficultyName(ClassifyDifficulty(gold_sql))];
      ++turn_bucket.total;
      ++difficulty_bucket.total;
      ++report.n_questions;
      if (matched) {
        ++turn_bucket.matched;
        ++difficulty_bucket.matched;
        ++report.matched_questions;
      } else {
        all_matched = false;
        report.failures.push_back({interaction.id, turn, reason});
      }
    }
    ++report.n_interactions;
    if (all_matched) ++report.matched_interactions;
  }
  if (report.n_questions > 0) {
    report.qm = static_cast<double>(report.matched_questions) / report.n_questions;
  }
  if (report.n_interactions > 0) {
    report.im = static_cast<double>(report.matched_interactions) / report.n_interactions;
  }
  return report;
}

ordered_json EvalReport::ToJson() const {
  auto buckets = [](const std::map<std::string, Bucket> &m, std::initializer_list<const char *> keys) {
    ordered_json out = ordered_json::object();
    for (const char *k : keys) {
      const Bucket &b = m.at(k);
      out[k] = {{"total", b.total}, {"matched", b.matched}, {"qm", b.Rate()}};
    }
    return out;
  };
  ordered_json j;
  j["qm"] = qm;
  j["im"] = im;
  j["n_questions"] = n_questions;
  j["n_interactions"] = n_interactions;
  j["matched_questions"] = matched_questions;
  j["matched_interactions"] = matched_interactions;
  j["per_turn"] = buckets(per_turn, {"1", "2", "3", "4+"});
  j["per_difficulty"] = buckets(per_difficulty, {"easy", "medium", "hard", "extra"});
  ordered_json fails = ordered_json::array();
  for (const TurnFailure &f : failures) {
    fails.push_back({{"interaction_id", f.interaction_id}, {"turn", f.turn}, {"reason", f.reason}});
  }
  j["failures"] = fails;
  return j;
}

std::string EvalReport::ToText() const {
  std::ostringstream out;
  char line[128];
  auto row = [&](const std::string &label, uint64_t total, double rate) {
    std::snprintf(line, sizeof(line), "%-12s %8llu %8.1f\n", label.c_str(),
                  static_cast<unsigned long long>(total), 100.0 * rate);
    out << line;
  };
  std::snprintf(line, sizeof(line), "%-12s %8s %8s\n", "", "count", "QM");
  out << line;
  for (const char *k : {"1", "2", "3", "4+"}) {
    row(std::string("turn ") + k, per_turn.at(k).total, per_turn.at(k).Rate());
  }
  for (const char *k : {"easy", "medium", "hard", "extra"}) {
    row(k, per_difficulty.at(k).total, per_difficulty.at(k).Rate());
  }
  row("all", n_questions, qm);
  std::snprintf(line, sizeof(line), "%-12s %8llu %8.1f\n", "IM",
                static_cast<unsigned long long>(n_interactions), 100.0 * im);
  out << line;
  return out.str();
}

// ---------------------------------------------------------------------------
// Predictions I/O

PredictionSet ReadPredictions(std::istream &in) {
  std::map<std::string, std::map<int, std::string>> by_turn;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      const std::string id = j.at("interaction_id").is_string()
                                 ? j.at("interaction_id").get<std::string>()
                                 : std::to_string(j.at("interaction_id").get<long long>());
      const int turn = j.at("turn_index").get<int>();
      if (turn < 1) throw FormatError("", "turn_index must be >= 1");
      if (!by_turn[id].emplace(turn, j.at("sql").get<std::string>()).second) {
        throw FormatError("", "duplicate prediction for '" + id + "' turn " + std::to_string(turn));
      }
    } catch (const json::exception &e) {
      throw FormatError("", "predictions line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  PredictionSet out;
  for (auto &[id, turns] : by_turn) {
    std::vector<std::string> &list = out[id];
    int expected = 1;
    for (auto &[turn, sql] : turns) {
      if (turn != expected) break;  // later turns without predecessors are unusable
      list.push_back(std::move(sql));
      ++expected;
    }
  }
  return out;
}

PredictionSet ReadPredictions(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open predictions '" + path + "'");
  return ReadPredictions(in);
}

void WritePredictions(const PredictionSet &predictions, const std::vector<std::string> &order,
                      std::ostream &out) {
  for (const std::string &id : order) {
    auto it = predictions.find(id);
    if (it == predictions.end()) continue;
    for (size_t t = 0; t < it->second.size(); ++t) {
      ordered_json j;
      j["interaction_id"] = id;
      j["turn_index"] = t + 1;
      j["sql"] = it->second[t];
      out << j.dump() << '\n';
    }
  }
}

}  // namespace convsql
