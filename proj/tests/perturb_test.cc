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

#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include <gtest/gtest.h>

#include "convsql/perturb.h"
#include "oracles.h"

namespace convsql {
namespace {

using testing::Schema;

const DatabaseSchema kCollege{"c", {Table{"college", {{"name", {}}, {"enr", {}}}}}};
const DatabaseSchema kSingle{"s", {Table{"t", {{"c", {}}}}}};

SqlQuery Canon(const std::string &sql, const DatabaseSchema &s) { return ParseCanonical(sql, s); }

std::multiset<PerturbKind> Kinds(const std::vector<PerturbSite> &sites) {
  std::multiset<PerturbKind> out;
  for (const auto &s : sites) out.insert(s.kind);
  return out;
}

TEST(EnumerateSites, SelectAndOrder) {
  const auto sites = EnumerateSites(Canon("select name from college order by enr asc", kCollege), kCollege);
  EXPECT_EQ(Kinds(sites), (std::multiset<PerturbKind>{PerturbKind::kSelectColumnMod,
                                                      PerturbKind::kOrderDirectionSwap}));
  ASSERT_EQ(sites[0].kind, PerturbKind::kSelectColumnMod);
  EXPECT_EQ(sites[0].clause, ChangeTag::kSelect);
  using A = PerturbAlternative::Action;
  EXPECT_EQ(sites[0].alternatives,
            (std::vector<PerturbAlternative>{{A::kReplaceColumn, {"college", "enr"}},
                                             {A::kAppendColumn, {"college", "enr"}}}));
  EXPECT_EQ(sites[1].clause, ChangeTag::kOrderBy);
}

TEST(EnumerateSites, NothingApplicable) {
  EXPECT_TRUE(EnumerateSites(Canon("select c from t", kSingle), kSingle).empty());
  EXPECT_TRUE(EnumerateSites(Canon("select c from t where c = 1", kSingle), kSingle).empty());
}

TEST(EnumerateSites, StarQuery) {
  const DatabaseSchema &db = Schema("college_db");
  const auto sites = EnumerateSites(Canon("select * from college where enr > 15000", db), db);
  ASSERT_EQ(sites.size(), 1u);
  EXPECT_EQ(sites[0].kind, PerturbKind::kStarToColumn);
  EXPECT_EQ(sites[0].clause, ChangeTag::kSelect);
  EXPECT_EQ(sites[0].alternatives.size(), 3u);
}

TEST(EnumerateSites, CountStarAndNested) {
  const DatabaseSchema &db = Schema("college_db");
  const auto sites = EnumerateSites(
      Canon("select count(*) from player where pid not in (select pid from tryout)", db), db);
  ASSERT_EQ(sites.size(), 2u);
  EXPECT_EQ(sites[0].kind, PerturbKind::kStarToColumn);
  EXPECT_EQ(sites[0].alternatives.size(), 4u);
  EXPECT_EQ(sites[1].kind, PerturbKind::kSelectColumnMod);
  EXPECT_EQ(sites[1].location, (SiteLocation{1, 0}));
  // a nested site is reported under the clause that holds the subquery
  EXPECT_EQ(sites[1].clause, ChangeTag::kWhere);
}

TEST(EnumerateSites, DerivedTableStarHasNoColumns) {
  const DatabaseSchema &db = Schema("college_db");
  const auto sites = EnumerateSites(Canon("select count(*) from (select distinct ppos from tryout)", db), db);
  ASSERT_EQ(sites.size(), 1u);
  EXPECT_EQ(sites[0].clause, ChangeTag::kFrom);
}

TEST(EnumerateSites, JoinSwapNeedsResolvableColumns) {
  const DatabaseSchema &poker = Schema("poker_player");
  const SqlQuery q = Canon(
      "select T1.Name from people as T1 join poker_player as T2 on T1.People_ID = T2.People_ID", poker);
  const auto sites = EnumerateSites(q, poker);
  ASSERT_EQ(Kinds(sites).count(PerturbKind::kJoinTableSwap), 1u);
  for (const auto &s : sites) {
    if (s.kind != PerturbKind::kJoinTableSwap) continue;
    EXPECT_EQ(s.clause, ChangeTag::kFrom);
    SqlQuery swapped = q;
    ApplySite(swapped, s, 0);
    EXPECT_EQ(PrintFromClause(swapped.body.from),
              "from people join poker_player on poker_player.people_id = people.people_id");
  }

  const DatabaseSchema xy{"xy", {Table{"x", {{"p", {}}, {"a", {}}}}, Table{"y", {{"q", {}}}}}};
  EXPECT_EQ(Kinds(EnumerateSites(Canon("select x.a from x join y on x.p = y.q", xy), xy))
                .count(PerturbKind::kJoinTableSwap),
            0u);
}

TEST(ApplySite, OrderDirectionSwap) {
  SqlQuery q = Canon("select name from college order by enr asc", kCollege);
  const auto sites = EnumerateSites(q, kCollege);
  ApplySite(q, sites[1], 0);
  EXPECT_EQ(PrintOrderByClause(q.body), "order by college.enr desc");
}

TEST(PerturbBudget, Bounds) {
  const SqlQuery q = ParseSql("select * from college where enr > 15000");
  EXPECT_EQ(PerturbBudget(q, 0.15), 1u);
  EXPECT_EQ(PerturbBudget(q, 0.0), 1u);
  EXPECT_EQ(PerturbBudget(q, 0.5), 4u);
  EXPECT_EQ(PerturbBudget(q, 1.0), 8u);
}

TEST(PerturbSql, NoSitesIsIdentity) {
  Rng rng(1);
  const SqlQuery q = Canon("select c from t", kSingle);
  std::vector<PerturbSite> applied;
  EXPECT_EQ(PerturbSql(q, kSingle, 0.15, rng, &applied), q);
  EXPECT_TRUE(applied.empty());
}

TEST(PerturbSql, StarQueryReachesEveryColumn) {
  const DatabaseSchema &db = Schema("college_db");
  const SqlQuery q = Canon("select * from college where enr > 15000", db);
  const std::set<std::string> reachable = testing::ReachablePerturbations(q, db, 1);
  EXPECT_EQ(reachable, (std::set<std::string>{
                           "select college.cname from college where college.enr > 15000",
                           "select college.state from college where college.enr > 15000",
                           "select college.enr from college where college.enr > 15000"}));
  std::set<std::string> seen;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const std::string out = PrintSql(PerturbSql(q, db, 0.15, rng));
    EXPECT_EQ(reachable.count(out), 1u) << out;
    seen.insert(out);
  }
  EXPECT_EQ(seen, reachable);
}

TEST(PerturbSql, ModifyOrAddIsBalanced) {
  const SqlQuery q = Canon("select name from college", kCollege);
  int appended = 0;
  const int n = 4000;
  for (int seed = 0; seed < n; ++seed) {
    Rng rng(seed);
    if (PerturbSql(q, kCollege, 0.15, rng).body.select_items.size() == 2) ++appended;
  }
  // 3 sigma of a fair coin over 4000 draws is about 95
  EXPECT_NEAR(appended, n / 2, 95);
}

TEST(PerturbSql, DeterministicForEqualSeeds) {
  for (const auto &g : testing::FixtureSqls()) {
    const DatabaseSchema &db = Schema(g.db_id);
    Rng a(99), b(99);
    EXPECT_EQ(PerturbSql(ParseSql(g.sql), db, 0.3, a), PerturbSql(ParseSql(g.sql), db, 0.3, b));
  }
}

TEST(PerturbSql, FixturesStayValidAndChange) {
  for (const auto &g : testing::FixtureSqls()) {
    const DatabaseSchema &db = Schema(g.db_id);
    const SqlQuery q = Canon(g.sql, db);
    const bool has_sites = !EnumerateSites(q, db).empty();
    const auto reachable = testing::ReachablePerturbations(q, db, PerturbBudget(q, 0.15));
    for (uint64_t seed = 0; seed < 3; ++seed) {
      Rng rng(DeriveSeed(5, {g.sql}, seed));
      std::vector<PerturbSite> applied;
      const SqlQuery p = PerturbSql(q, db, 0.15, rng, &applied);
      const std::string printed = PrintSql(p);
      SqlQuery reparsed;
      ASSERT_NO_THROW(reparsed = ParseCanonical(printed, db)) << printed;
      EXPECT_EQ(reparsed, p);
      EXPECT_EQ(has_sites, printed != PrintSql(q)) << g.sql;
      EXPECT_EQ(reachable.count(printed), 1u) << g.sql << " -> " << printed;
      const TwpLabel twp = ComputeTurnSwitch(q, p, db);
      for (const auto &s : applied) EXPECT_EQ(twp.changes.count(s.clause), 1u) << printed;
    }
  }
}

TEST(PerturbSql, FullBudgetTouchesEverySite) {
  const DatabaseSchema &db = Schema("college_db");
  const SqlQuery q = Canon("select cname, state from college order by enr desc, state asc", db);
  Rng rng(3);
  std::vector<PerturbSite> applied;
  PerturbSql(q, db, 1.0, rng, &applied);
  EXPECT_EQ(applied.size(), EnumerateSites(q, db).size());
}

TEST(PerturbConfig, Validation) {
  EXPECT_NO_THROW(ValidatePerturbConfig({0.0, 1.0, 0}));
  EXPECT_THROW(ValidatePerturbConfig({-0.1, 0.15, 0}), std::invalid_argument);
  EXPECT_THROW(ValidatePerturbConfig({0.15, 1.5, 0}), std::invalid_argument);
}

TEST(PerturbKindName, Names) {
  EXPECT_EQ(PerturbKindName(PerturbKind::kSelectColumnMod), "select_column_mod");
  EXPECT_EQ(PerturbKindName(PerturbKind::kJoinTableSwap), "join_table_swap");
  EXPECT_EQ(PerturbKindName(PerturbKind::kStarToColumn), "star_to_column");
  EXPECT_EQ(PerturbKindName(PerturbKind::kOrderDirectionSwap), "order_direction_swap");
}

TEST(DeriveSeed, KeysMatter) {
  EXPECT_EQ(DeriveSeed(1, {"a", "b"}, 2), DeriveSeed(1, {"a", "b"}, 2));
  EXPECT_NE(DeriveSeed(1, {"a", "b"}, 2), DeriveSeed(1, {"ab"}, 2));
  EXPECT_NE(DeriveSeed(1, {"a"}, 2), DeriveSeed(2, {"a"}, 2));
  EXPECT_NE(DeriveSeed(1, {"a"}, 2), DeriveSeed(1, {"a"}, 3));
}

}  // namespace
}  // namespace convsql
