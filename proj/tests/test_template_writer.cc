#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "boxfact/aligner.h"
#include "boxfact/metrics.h"
#include "boxfact/template_writer.h"
#include "fixtures.h"
#include "synth.h"

using namespace boxfact;
using testing::kHarden;
using testing::kHickson;
using testing::kHoward;

namespace {

GameTable FullTable() {
  GameTable t = testing::RocketsNuggetsTable();
  struct Row { EntityIndex e; int fgm, fga, f3m, f3a, ftm, fta; };
  for (Row r : {Row{kHarden, 7, 19, 2, 8, 8, 9}, Row{kHoward, 10, 15, 0, 0, 6, 10},
                Row{kHickson, 6, 11, 0, 1, 2, 2}}) {
    t.SetValue(r.e, "FGM", r.fgm);
    t.SetValue(r.e, "FGA", r.fga);
    t.SetValue(r.e, "FG3M", r.f3m);
    t.SetValue(r.e, "FG3A", r.f3a);
    t.SetValue(r.e, "FTM", r.ftm);
    t.SetValue(r.e, "FTA", r.fta);
  }
  return t;
}

}  // namespace

TEST_CASE("worked example rendering") {
  TemplateOutput out = RenderTemplateWithPlan(FullTable());
  const Summary &s = out.summary;
  CHECK_NOTHROW(CheckSummary(s));
  REQUIRE(s.sentence_count() == 4);
  auto [a, b] = s.Sentence(0);
  Tokens first(s.tokens.begin() + a, s.tokens.begin() + b);
  CHECK(JoinTokens(first) ==
        "Houston Rockets ( 18 - 5 ) defeated the Denver Nuggets ( 10 - 13 ) "
        "108 - 96 .");
  auto [c, d] = s.Sentence(1);
  Tokens second(s.tokens.begin() + c, s.tokens.begin() + d);
  CHECK(JoinTokens(second) ==
        "Dwight Howard scored 26 points ( 10 - 15 FG , 0 - 0 3PT , 6 - 10 FT ) "
        "to go with 13 rebounds .");
  // Harden (24) before Hickson (14).
  CHECK(s.tokens[s.Sentence(2).first + 1] == "Harden");
  CHECK(s.tokens[s.Sentence(3).first + 1] == "Hickson");
  // 6 numerals in the score line, 8 per player.
  CHECK(out.stated.size() == 6 + 3 * 8);
  for (const PlanItem &it : out.stated.items) {
    CHECK(s.tokens[it.token] == FormatValue(it.value));
    CHECK(License(it.entity, it.type, it.value, FullTable()));
  }
  CHECK(RenderTemplate(FullTable()) == s);
}

TEST_CASE("player count is clamped") {
  TemplateConfig one;
  one.k_players = 1;
  CHECK(RenderTemplate(FullTable(), one).sentence_count() == 2);
  TemplateConfig many;
  many.k_players = 40;
  CHECK(RenderTemplate(FullTable(), many).sentence_count() == 4);
}

TEST_CASE("ties in points fall back to rebounds, then names") {
  GameTable t = FullTable();
  t.SetValue(kHickson, "PTS", 24);
  t.SetValue(kHickson, "REB", 10);
  Summary s = RenderTemplate(t);
  // Harden and Hickson both 24 / 10: by full name, byte order.
  CHECK(s.tokens[s.Sentence(2).first] == "JJ");
  CHECK(s.tokens[s.Sentence(3).first] == "James");
  t.SetValue(kHickson, "REB", 9);
  s = RenderTemplate(t);
  CHECK(s.tokens[s.Sentence(2).first] == "James");
}

TEST_CASE("errors") {
  TemplateConfig zero;
  zero.k_players = 0;
  CHECK_THROWS_AS(RenderTemplate(FullTable(), zero), TemplateError);
  GameTable tied = FullTable();
  tied.SetValue(kVisTeam, "PTS", 108);
  CHECK_THROWS_AS(RenderTemplate(tied), TemplateError);
  try {
    RenderTemplate(testing::RocketsNuggetsTable());
    FAIL("expected a missing record");
  } catch (const TemplateError &e) {
    std::string msg = e.what();
    CHECK(msg.find("FGM") != std::string::npos);
    CHECK(msg.find("Dwight Howard") != std::string::npos);
  }
}

TEST_CASE("rendered text round-trips through the aligner") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    testing::SynthGame g = testing::MakeSynthGame(seed);
    TemplateOutput out = RenderTemplateWithPlan(g.sample.table);
    Sample rendered{g.sample.table, out.summary};
    Extraction ex = ExtractContentPlan(NormalizeSample(rendered),
                                       CueLexicon::Defaults());
    ContentPlan sys = StatedPlan(ex, g.sample.table);
    INFO("seed " << seed << ": " << JoinTokens(out.summary.tokens));
    RgScore rg = Rg(sys, g.sample.table);
    CHECK(rg.precision == 1.0);
    CHECK(Cs(out.stated, sys).recall >= 0.95);
  }
}
