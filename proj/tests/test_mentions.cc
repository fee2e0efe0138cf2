#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "boxfact/mentions.h"
#include "fixtures.h"

using namespace boxfact;
using testing::kHarden;
using testing::kHoward;

namespace {

Summary S(std::string_view text) {
  return Summary::FromTokens(SplitTokens(text));
}

}  // namespace

TEST_CASE("longest alias wins") {
  GameTable t = testing::RocketsNuggetsTable();
  AliasLexicon lex = AliasLexicon::Build(t);
  auto ms = DetectMentions(S("Dwight Howard and Harden beat Denver"), lex);
  REQUIRE(ms.size() == 3);
  CHECK(ms[0].start == 0);
  CHECK(ms[0].end == 2);
  CHECK(ms[0].entity == kHoward);
  CHECK(ms[0].kind == EntityKind::kPlayer);
  CHECK(ms[1].entity == kHarden);
  CHECK(ms[2].entity == kVisTeam);
  CHECK(ms[2].kind == EntityKind::kTeam);
}

TEST_CASE("aliases are case sensitive tokens") {
  GameTable t = testing::RocketsNuggetsTable();
  AliasLexicon lex = AliasLexicon::Build(t);
  CHECK(DetectMentions(S("the rockets won"), lex).empty());
  CHECK(DetectMentions(S("the Rockets won"), lex).size() == 1);
}

TEST_CASE("ambiguous aliases never match") {
  GameTable t = testing::RocketsNuggetsTable();
  Entity other = MakePlayer("9", Side::kAway, "James", "Johnson", false);
  t.AddPlayer(other);
  AliasLexicon lex = AliasLexicon::Build(t);
  CHECK(lex.IsAmbiguous(Tokens{"James"}));
  auto ms = DetectMentions(S("James scored , James Harden scored"), lex);
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].entity == kHarden);
  CHECK(ms[0].start == 3);
}

TEST_CASE("pronouns resolve to the most recent mention of their kind") {
  GameTable t = testing::RocketsNuggetsTable();
  AliasLexicon lex = AliasLexicon::Build(t);
  Summary s = S("He started . Howard led the Rockets . He scored and they won . "
                "Harden added his points to their total .");
  auto ms = ResolvePronouns(s, DetectMentions(s, lex));
  std::vector<std::pair<std::size_t, EntityIndex>> pronouns;
  for (const Mention &m : ms) {
    if (m.source == Mention::Source::kPronoun) pronouns.emplace_back(m.start, m.entity);
  }
  // The first "He" has no antecedent.
  REQUIRE(pronouns.size() == 4);
  CHECK(pronouns[0] == std::pair{std::size_t{8}, kHoward});
  CHECK(pronouns[1] == std::pair{std::size_t{11}, kHomeTeam});
  CHECK(pronouns[2] == std::pair{std::size_t{16}, kHarden});
  CHECK(pronouns[3] == std::pair{std::size_t{19}, kHomeTeam});
  for (std::size_t i = 1; i < ms.size(); ++i) CHECK(ms[i - 1].start < ms[i].start);
}

TEST_CASE("entity normalization rewrites aliases to canonical names") {
  GameTable t = testing::RocketsNuggetsTable();
  AliasLexicon lex = AliasLexicon::Build(t);
  Summary s = S("Howard had 26 . Houston won . Denver lost .");
  Summary n = EntityNormalize(s, DetectMentions(s, lex), lex);
  CHECK(n.tokens == SplitTokens("Dwight Howard had 26 . Houston Rockets won . "
                                "Denver Nuggets lost ."));
  CHECK(n.sentence_bounds == std::vector<std::size_t>{0, 5, 9});
  CHECK_NOTHROW(CheckSummary(n));
  // Idempotent.
  Summary again = EntityNormalize(n, DetectMentions(n, lex), lex);
  CHECK(again == n);
}

TEST_CASE("alias overrides by id or canonical name") {
  const std::string path = "test_mentions_aliases.json";
  {
    std::ofstream f(path);
    f << R"({"1": ["Superman"], "James Harden": [["The", "Beard"]],
             "home": ["H-Town"]})";
  }
  AliasOverrides o = LoadAliasOverrides(path);
  std::remove(path.c_str());
  GameTable t = testing::RocketsNuggetsTable();
  AliasLexicon lex = AliasLexicon::Build(t, &o);
  auto ms = DetectMentions(S("Superman and The Beard lifted H-Town"), lex);
  REQUIRE(ms.size() == 3);
  CHECK(ms[0].entity == kHoward);
  CHECK(ms[1].entity == kHarden);
  CHECK(ms[1].end - ms[1].start == 2);
  CHECK(ms[2].entity == kHomeTeam);
}

TEST_CASE("bad alias files") {
  CHECK_THROWS_AS(LoadAliasOverrides("missing.json"), SchemaError);
  const std::string path = "test_mentions_bad.json";
  {
    std::ofstream f(path);
    f << R"({"1": "not a list"})";
  }
  CHECK_THROWS_AS(LoadAliasOverrides(path), SchemaError);
  std::remove(path.c_str());
}
