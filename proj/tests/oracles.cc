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

#include "oracles.h"

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "convsql/corpus.h"
#include "convsql/perturb.h"

namespace convsql::testing {

std::string FixturePath(const std::string &name) {
  return std::string(CONVSQL_FIXTURE_DIR) + "/" + name;
}

const SchemaCatalog &FixtureSchemas() {
  static const SchemaCatalog catalog = LoadSchemas(FixturePath("tables.json"));
  return catalog;
}

const std::vector<Interaction> &ConversationFixtures() {
  static const std::vector<Interaction> v =
      LoadInteractions(FixturePath("sparc_dev.json"), false, FixtureSchemas());
  return v;
}

const std::vector<Interaction> &SingleTurnFixtures() {
  static const std::vector<Interaction> v =
      LoadInteractions(FixturePath("spider_dev.json"), true, FixtureSchemas());
  return v;
}

const std::vector<GoldSql> &FixtureSqls() {
  static const std::vector<GoldSql> all = [] {
    std::vector<GoldSql> out;
    for (const auto *set : {&ConversationFixtures(), &SingleTurnFixtures()}) {
      for (const Interaction &i : *set) {
        for (const Turn &t : i.turns) out.push_back({i.db_id, t.gold_sql});
      }
    }
    return out;
  }();
  return all;
}

const DatabaseSchema &Schema(const std::string &db_id) {
  return FixtureSchemas().at(db_id);
}

namespace {

void AddOnce(std::vector<std::string> &v, const std::string &s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

bool IsWord(const Token &t) { return t.kind == Token::Kind::kWord; }

}  // namespace

RspLabel TokenScanRsp(const SqlQuery &query, const DatabaseSchema &schema) {
  const std::vector<Token> toks = TokenizeSql(PrintSql(Canonicalize(query, schema)));
  RspLabel label;
  for (size_t i = 0; i < toks.size(); ++i) {
    if (!IsWord(toks[i])) continue;
    const std::string word = ToLower(toks[i].text);
    if (i + 2 < toks.size() && toks[i + 1].text == ".") {
      AddOnce(label.tables, word);
      if (toks[i + 2].text != "*") AddOnce(label.columns, word + "." + ToLower(toks[i + 2].text));
      i += 2;
      continue;
    }
    if (schema.FindTable(word) != nullptr) AddOnce(label.tables, word);
  }
  return label;
}

std::map<std::string, std::string> SplitClauses(const std::string &printed) {
  const std::vector<std::string> toks = TokenTexts(printed);
  std::map<std::string, std::string> out;
  std::string key = "select";
  int depth = 0;
  for (size_t i = 0; i < toks.size(); ++i) {
    const std::string &t = toks[i];
    if (depth == 0) {
      std::string next;
      if (t == "from" || t == "where" || t == "having" || t == "limit") {
        next = t;
      } else if ((t == "group" || t == "order") && i + 1 < toks.size() && toks[i + 1] == "by") {
        next = t + " by";
      } else if (t == "intersect" || t == "union" || t == "except") {
        // everything that follows belongs to the set-op slot
        std::string rest;
        for (size_t j = i; j < toks.size(); ++j) rest += toks[j] + " ";
        out["set op"] = rest;
        break;
      }
      if (!next.empty() && key != "set op") key = next;
    }
    if (t == "(") ++depth;
    if (t == ")") --depth;
    out[key] += t + " ";
  }
  return out;
}

TwpLabel TokenScanTwp(const SqlQuery &prev, const SqlQuery &curr, const DatabaseSchema &schema) {
  const auto a = SplitClauses(PrintSql(Canonicalize(prev, schema)));
  const auto b = SplitClauses(PrintSql(Canonicalize(curr, schema)));
  static const std::vector<std::pair<std::string, ChangeTag>> kSlots = {
      {"select", ChangeTag::kSelect},   {"from", ChangeTag::kFrom},
      {"where", ChangeTag::kWhere},     {"group by", ChangeTag::kGroupBy},
      {"having", ChangeTag::kHaving},   {"order by", ChangeTag::kOrderBy},
      {"limit", ChangeTag::kLimit},     {"set op", ChangeTag::kSetOp},
  };
  TwpLabel label;
  for (const auto &[key, tag] : kSlots) {
    auto x = a.find(key);
    auto y = b.find(key);
    const std::string sx = x == a.end() ? "" : x->second;
    const std::string sy = y == b.end() ? "" : y->second;
    if (sx != sy) label.changes.insert(tag);
  }
  if (label.changes.empty()) label.changes.insert(ChangeTag::kNone);
  return label;
}

namespace {

void Reach(const SqlQuery &q, const std::vector<PerturbSite> &sites, size_t start,
           size_t remaining, std::set<std::string> &out) {
  if (remaining == 0) {
    out.insert(PrintSql(q));
    return;
  }
  for (size_t i = start; i + remaining <= sites.size(); ++i) {
    for (size_t c = 0; c < sites[i].alternatives.size(); ++c) {
      SqlQuery next = q;
      ApplySite(next, sites[i], c);
      Reach(next, sites, i + 1, remaining - 1, out);
    }
  }
}

}  // namespace

std::set<std::string> ReachablePerturbations(const SqlQuery &canonical,
                                             const DatabaseSchema &schema, size_t k) {
  const std::vector<PerturbSite> sites = EnumerateSites(canonical, schema);
  std::set<std::string> out;
  if (sites.empty()) {
    out.insert(PrintSql(canonical));
    return out;
  }
  Reach(canonical, sites, 0, std::min(k, sites.size()), out);
  return out;
}

std::string ScratchPath(const std::string &name) {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("convsql_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return (dir / name).string();
}

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string ReplicatedConversations(int copies) {
  std::ifstream in(FixturePath("sparc_dev.json"));
  const nlohmann::json doc = nlohmann::json::parse(in);
  nlohmann::json out = nlohmann::json::array();
  for (int c = 0; c < copies; ++c) {
    for (nlohmann::json rec : doc) {
      rec["interaction_id"] = std::to_string(c) + "-" + rec["interaction_id"].get<std::string>();
      out.push_back(std::move(rec));
    }
  }
  const std::string path = ScratchPath("replicated_" + std::to_string(copies) + ".json");
  std::ofstream(path) << out.dump();
  return path;
}

std::string RenameAliases(const std::string &sql) {
  const std::vector<Token> toks = TokenizeSql(sql);
  std::set<std::string> aliases;
  for (size_t i = 0; i + 1 < toks.size(); ++i) {
    if (ToLower(toks[i].text) == "as" && IsWord(toks[i + 1])) aliases.insert(ToLower(toks[i + 1].text));
  }
  std::string out;
  for (const Token &t : toks) {
    if (!out.empty()) out += ' ';
    if (IsWord(t) && aliases.count(ToLower(t.text)) != 0) {
      out += "x_" + ToLower(t.text);
    } else {
      out += t.text;
    }
  }
  return out;
}

}  // namespace convsql::testing
