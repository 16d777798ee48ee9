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

#include <gtest/gtest.h>

#include "convsql/errors.h"
#include "convsql/labels.h"
#include "oracles.h"

namespace convsql {
namespace {

using testing::Schema;

RspLabel Rsp(const std::string &db, const std::string &sql) {
  return ExtractRelatedSchema(ParseSql(sql), Schema(db));
}

TwpLabel Twp(const std::string &db, const std::string &prev, const std::string &curr) {
  return ComputeTurnSwitch(ParseSql(prev), ParseSql(curr), Schema(db));
}

TEST(RelatedSchema, StarWithWhere) {
  const RspLabel l = Rsp("college_db", "select * from college where enr > 15000");
  EXPECT_EQ(l.tables, (std::vector<std::string>{"college"}));
  EXPECT_EQ(l.columns, (std::vector<std::string>{"college.enr"}));
  EXPECT_EQ(SerializeRsp(l), "college , college.enr");
}

TEST(RelatedSchema, StarOnly) {
  const RspLabel l = Rsp("college_db", "select * from college");
  EXPECT_EQ(l.tables, (std::vector<std::string>{"college"}));
  EXPECT_TRUE(l.columns.empty());
  EXPECT_EQ(SerializeRsp(l), "college");
}

TEST(RelatedSchema, JoinWithWhereSubquery) {
  const std::string sql =
      "select T1.pName from player as T1 join tryout as T2 on T1.pID = T2.pID "
      "where T2.cName in (select cName from college where enr > 10000)";
  const RspLabel l = Rsp("college_db", sql);
  EXPECT_EQ(l.tables, (std::vector<std::string>{"player", "tryout", "college"}));
  EXPECT_EQ(l.columns, (std::vector<std::string>{"player.pname", "player.pid", "tryout.pid",
                                                  "tryout.cname", "college.cname", "college.enr"}));
  EXPECT_EQ(l, testing::TokenScanRsp(ParseSql(sql), Schema("college_db")));
}

TEST(RelatedSchema, SharedColumnNamesStayDistinct) {
  const RspLabel l = Rsp("college_db",
                         "select college.cname from college join tryout on college.cname = tryout.cname");
  EXPECT_EQ(SerializeRsp(l), "college , tryout , college.cname , tryout.cname");
}

TEST(RelatedSchema, UnresolvableQueryThrows) {
  EXPECT_THROW(Rsp("college_db", "select foo from college"), UnknownIdentifier);
}

TEST(RelatedSchema, MatchesTokenScanOnFixtures) {
  for (const auto &g : testing::FixtureSqls()) {
    const SqlQuery q = ParseSql(g.sql);
    EXPECT_EQ(ExtractRelatedSchema(q, Schema(g.db_id)), testing::TokenScanRsp(q, Schema(g.db_id)))
        << g.sql;
  }
}

TEST(RelatedSchema, InvariantUnderAliasRenaming) {
  for (const auto &g : testing::FixtureSqls()) {
    EXPECT_EQ(Rsp(g.db_id, g.sql), Rsp(g.db_id, testing::RenameAliases(g.sql))) << g.sql;
  }
}

TEST(TurnSwitch, WhereAdded) {
  const TwpLabel l = Twp("college_db", "select * from college", "select * from college where enr > 15000");
  EXPECT_EQ(l.changes, (std::set<ChangeTag>{ChangeTag::kWhere}));
  EXPECT_EQ(SerializeTwp(l), "where change");
}

TEST(TurnSwitch, OrderAndLimit) {
  const TwpLabel l = Twp("college_db", "select cname from college order by enr asc",
                         "select cname from college order by enr desc limit 3");
  EXPECT_EQ(l.changes, (std::set<ChangeTag>{ChangeTag::kOrderBy, ChangeTag::kLimit}));
  EXPECT_EQ(l, testing::TokenScanTwp(ParseSql("select cname from college order by enr asc"),
                                     ParseSql("select cname from college order by enr desc limit 3"),
                                     Schema("college_db")));
  EXPECT_EQ(SerializeTwp(l), "order by change </s> limit change");
}

TEST(TurnSwitch, IgnoresAliasAndCaseDifferences) {
  const TwpLabel l = Twp("poker_player",
                         "SELECT T1.Name FROM people AS T1 JOIN poker_player AS T2 ON T1.People_ID = T2.People_ID",
                         "select people.name from people join poker_player on people.people_id = poker_player.people_id");
  EXPECT_EQ(l.changes, (std::set<ChangeTag>{ChangeTag::kNone}));
}

TEST(TurnSwitch, SetOpAndNested) {
  EXPECT_EQ(Twp("college_db", "select cname from tryout where ppos = 'mid'",
                "select cname from tryout where ppos = 'mid' union select cname from tryout")
                .changes,
            (std::set<ChangeTag>{ChangeTag::kSetOp}));
  EXPECT_EQ(Twp("college_db", "select cname from college where enr > (select avg(enr) from college)",
                "select cname, state from college where enr > (select max(enr) from college)")
                .changes,
            (std::set<ChangeTag>{ChangeTag::kSelect, ChangeTag::kWhere}));
  EXPECT_EQ(Twp("college_db", "select count(*) from college", "select state, count(*) from college group by state")
                .changes,
            (std::set<ChangeTag>{ChangeTag::kSelect, ChangeTag::kGroupBy}));
  EXPECT_EQ(Twp("college_db", "select state from college group by state",
                "select distinct state from college group by state having count(*) > 1")
                .changes,
            (std::set<ChangeTag>{ChangeTag::kSelect, ChangeTag::kHaving}));
  EXPECT_EQ(Twp("college_db", "select pname from player", "select pname from player join tryout on player.pid = tryout.pid")
                .changes,
            (std::set<ChangeTag>{ChangeTag::kFrom}));
}

TEST(TurnSwitch, IdenticalFixturesGiveNone) {
  for (const auto &g : testing::FixtureSqls()) {
    const SqlQuery q = ParseSql(g.sql);
    EXPECT_EQ(ComputeTurnSwitch(q, q, Schema(g.db_id)).changes, (std::set<ChangeTag>{ChangeTag::kNone}))
        << g.sql;
  }
}

TEST(TurnSwitch, MatchesClauseSplitOracleOnFixturePairs) {
  const auto &all = testing::FixtureSqls();
  size_t compared = 0;
  for (size_t i = 0; i < all.size(); ++i) {
    for (size_t j = 0; j < all.size(); ++j) {
      if (all[i].db_id != all[j].db_id) continue;
      const SqlQuery a = ParseSql(all[i].sql);
      const SqlQuery b = ParseSql(all[j].sql);
      const DatabaseSchema &s = Schema(all[i].db_id);
      ASSERT_EQ(ComputeTurnSwitch(a, b, s), testing::TokenScanTwp(a, b, s))
          << all[i].sql << "\n" << all[j].sql;
      ++compared;
    }
  }
  EXPECT_GT(compared, 1000u);
}

TEST(SerializeTwp, FixedOrder) {
  EXPECT_EQ(SerializeTwp({{ChangeTag::kWhere}}), "where change");
  EXPECT_EQ(SerializeTwp({{ChangeTag::kWhere, ChangeTag::kSelect}}), "select change </s> where change");
  EXPECT_EQ(SerializeTwp({{ChangeTag::kNone}}), "none");
}

TEST(ChangeTagName, Vocabulary) {
  EXPECT_EQ(ChangeTagName(ChangeTag::kSelect), "select change");
  EXPECT_EQ(ChangeTagName(ChangeTag::kFrom), "from change");
  EXPECT_EQ(ChangeTagName(ChangeTag::kGroupBy), "group by change");
  EXPECT_EQ(ChangeTagName(ChangeTag::kHaving), "having change");
  EXPECT_EQ(ChangeTagName(ChangeTag::kOrderBy), "order by change");
  EXPECT_EQ(ChangeTagName(ChangeTag::kLimit), "limit change");
  EXPECT_EQ(ChangeTagName(ChangeTag::kSetOp), "set op change");
  EXPECT_EQ(ChangeTagName(ChangeTag::kNone), "none");
}

TEST(FinalUtterance, PresentAndAbsent) {
  Interaction with{"1", "college_db", {{"Show all colleges.", "select * from college"}},
                   "What are the colleges with enrollment greater than 15000?"};
  EXPECT_EQ(BuildFupTarget(with), "What are the colleges with enrollment greater than 15000?");
  Interaction without{"2", "college_db", {{"Show all colleges.", "select * from college"}}, std::nullopt};
  EXPECT_FALSE(BuildFupTarget(without).has_value());
  without.final_utterance = "";
  EXPECT_FALSE(BuildFupTarget(without).has_value());
}

}  // namespace
}  // namespace convsql
