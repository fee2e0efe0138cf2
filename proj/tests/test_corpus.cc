#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <set>

#include "boxfact/corpus.h"
#include "synth.h"

using namespace boxfact;
using nlohmann::json;

namespace {

// Two games in the public box-score layout.
json RawGame(const std::string &id, bool with_home_away) {
  json g = json::parse(R"({
    "day": "11_14_14",
    "home_name": "Rockets", "home_city": "Houston",
    "vis_name": "Nuggets", "vis_city": "Denver",
    "home_line": {"TEAM-CITY": "Houston", "TEAM-NAME": "Rockets",
                  "TEAM-PTS": "108", "TEAM-WINS": "18", "TEAM-LOSSES": "5",
                  "TEAM-FG_PCT": "44", "TEAM-TOV": "12",
                  "TEAM-PTS_QTR1": "30", "TEAM-PTS_QTR2": "25",
                  "TEAM-PTS_QTR3": "28", "TEAM-PTS_QTR4": "25"},
    "vis_line": {"TEAM-CITY": "Denver", "TEAM-NAME": "Nuggets",
                 "TEAM-PTS": "96", "TEAM-WINS": "10", "TEAM-LOSSES": "13",
                 "TEAM-PTS_QTR1": "20", "TEAM-PTS_QTR2": "20",
                 "TEAM-PTS_QTR3": "30", "TEAM-PTS_QTR4": "26",
                 "TEAM-MYSTERY": "1"},
    "box_score": {
      "PLAYER_NAME": {"0": "James Harden", "1": "Dwight Howard",
                      "2": "J.J. Hickson", "3": "Nene"},
      "FIRST_NAME": {"0": "James", "1": "Dwight", "2": "J.J.", "3": "Nene"},
      "SECOND_NAME": {"0": "Harden", "1": "Howard", "2": "Hickson", "3": "N/A"},
      "START_POSITION": {"0": "G", "1": "C", "2": "F", "3": "N/A"},
      "TEAM_CITY": {"0": "Houston", "1": "Houston", "2": "Denver", "3": "Denver"},
      "PTS": {"0": "24", "1": "26", "2": "14", "3": "N/A"},
      "REB": {"0": "10", "1": "13", "2": "10", "3": "N/A"},
      "TOV": {"0": "4", "1": "2", "2": "1", "3": ""},
      "MIN": {"0": "38", "1": "30", "2": "22", "3": "N/A"},
      "PF": {"0": "2", "1": "3", "2": " 4 ", "3": "N/A"},
      "PLUS_MINUS": {"0": "+9", "1": "+12", "2": "-8", "3": "N/A"}
    },
    "summary": ["The", "Houston", "Rockets", "won", "108", "-", "96", ".",
                "Harden", "scored", "24", "points", "."]
  })");
  g["game_id"] = id;
  if (with_home_away) {
    g["box_score"]["HOME_AWAY"] = {{"0", "HOME"}, {"1", "HOME"},
                                   {"2", "AWAY"}, {"3", "AWAY"}};
  }
  return g;
}

std::string Jsonl(const std::vector<json> &games) {
  std::string out;
  for (const json &g : games) out += g.dump() + "\n";
  return out;
}

}  // namespace

TEST_CASE("loads the public layout") {
  LoadResult r = ParseCorpus(Jsonl({RawGame("a", false), RawGame("b", true)}),
                             DefaultSchema());
  REQUIRE(r.samples.size() == 2);
  CHECK(r.rejected.empty());
  const GameTable &t = r.samples[0].table;
  CHECK(t.game_id() == "a");
  CHECK(FormatDate(t.date()) == "2014-11-14");
  CHECK(t.home_team().DisplayName() == "Houston Rockets");
  CHECK(t.Lookup(kHomeTeam, "WIN") == 18);
  CHECK(t.Lookup(kHomeTeam, "TO") == 12);
  CHECK(t.Lookup(kVisTeam, "LOSS") == 13);
  REQUIRE(t.Players().size() == 4);
  CHECK(t.Players(Side::kHome).size() == 2);
  const EntityIndex harden = t.Players()[0], nene = t.Players()[3];
  CHECK(t.entity(harden).DisplayName() == "James Harden");
  CHECK(t.entity(harden).starter);
  CHECK(t.entity(harden).id == "0");
  CHECK(t.Lookup(harden, "TO") == 4);
  CHECK(t.Lookup(harden, "PF") == 2);
  CHECK(t.Lookup(t.Players()[2], "PF") == 4);
  CHECK_FALSE(t.entity(nene).starter);
  CHECK(t.entity(nene).side == Side::kAway);
  CHECK_FALSE(t.Lookup(nene, "PTS"));
  CHECK(r.samples[0].summary.sentence_count() == 2);
  // Unknown columns warn once per game.
  for (const char *col : {"MYSTERY", "PLUS_MINUS"}) {
    CHECK(std::count_if(r.warnings.begin(), r.warnings.end(), [&](const LoadIssue &w) {
            return w.message.find(col) != std::string::npos;
          }) == 2);
  }
}

TEST_CASE("invalid games are rejected one by one") {
  json no_vis = RawGame("no-vis", true);
  no_vis.erase("vis_line");
  json bad_sum = RawGame("bad-sum", true);
  bad_sum["home_line"]["TEAM-PTS_QTR1"] = "40";  // quarters exceed PTS
  json overtime = RawGame("ot", true);
  overtime["home_line"]["TEAM-PTS_QTR4"] = "20";  // quarters short: overtime
  LoadResult r = ParseCorpus(Jsonl({RawGame("ok", true), no_vis, bad_sum, overtime}),
                             DefaultSchema());
  REQUIRE(r.samples.size() == 2);
  CHECK(r.samples[1].table.game_id() == "ot");
  REQUIRE(r.rejected.size() == 2);
  CHECK(r.rejected[0].game == 1);
  CHECK(r.rejected[0].message.find("vis_line") != std::string::npos);
  CHECK(r.rejected[1].game_id == "bad-sum");

  LoadOptions strict;
  strict.strict_quarter_sum = true;
  LoadResult s = ParseCorpus(Jsonl({overtime}), DefaultSchema(), strict);
  CHECK(s.samples.empty());
  CHECK(s.rejected.size() == 1);
}

TEST_CASE("same-city games need HOME_AWAY") {
  json g = RawGame("la", false);
  g["vis_city"] = "Houston";
  g["vis_line"]["TEAM-CITY"] = "Houston";
  LoadResult r = ParseCorpus(Jsonl({g}), DefaultSchema());
  CHECK(r.samples.empty());
  g["box_score"]["HOME_AWAY"] = {{"0", "HOME"}, {"1", "HOME"},
                                 {"2", "AWAY"}, {"3", "AWAY"}};
  CHECK(ParseCorpus(Jsonl({g}), DefaultSchema()).samples.size() == 1);
}

TEST_CASE("array and line formats agree") {
  std::vector<json> games = {RawGame("a", true), RawGame("b", true)};
  LoadResult lines = ParseCorpus(Jsonl(games), DefaultSchema());
  LoadResult array = ParseCorpus(json(games).dump(2), DefaultSchema());
  REQUIRE(array.samples.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(array.samples[i].table == lines.samples[i].table);
    CHECK(array.samples[i].summary == lines.samples[i].summary);
  }
}

TEST_CASE("malformed JSON names the line") {
  std::string text = RawGame("a", true).dump() + "\n{not json\n";
  try {
    ParseCorpus(text, DefaultSchema());
    FAIL("expected CorpusError");
  } catch (const CorpusError &e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(ParseCorpus("[1, 2", DefaultSchema()), CorpusError);
  CHECK_THROWS_AS(LoadCorpus("no/such/corpus.jsonl", DefaultSchema()), CorpusError);
}

TEST_CASE("save then load is a fixed point") {
  std::vector<Sample> samples;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    samples.push_back(testing::MakeSynthGame(seed).sample);
  }
  samples.push_back(ParseCorpus(Jsonl({RawGame("raw", true)}), DefaultSchema())
                        .samples.at(0));
  const std::string text = SerializeCorpus(samples);
  LoadResult back = ParseCorpus(text, DefaultSchema());
  REQUIRE(back.samples.size() == samples.size());
  CHECK(back.rejected.empty());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    INFO("sample " << i);
    CHECK(back.samples[i].table == samples[i].table);
    CHECK(back.samples[i].summary == samples[i].summary);
  }
  CHECK(SerializeCorpus(back.samples) == text);

  const std::string path = "test_corpus_roundtrip.jsonl";
  SaveCorpus(path, samples);
  CHECK(LoadCorpus(path, DefaultSchema()).samples.size() == samples.size());
  std::remove(path.c_str());

  json g = GameToJson(samples.back());
  CHECK(g["box_score"]["STARTER"]["0"] == true);
  CHECK(g["box_score"]["HOME_AWAY"]["2"] == "AWAY");
  CHECK(g["home_line"]["PTS"].is_number_integer());
  CHECK_FALSE(g["box_score"]["PTS"].contains("3"));
}

TEST_CASE("split sizes") {
  SplitIndices s = SplitCorpus(100, {}, 20170);
  CHECK(s.train.size() == 70);
  CHECK(s.valid.size() == 15);
  CHECK(s.test.size() == 15);
  SplitIndices t = SplitCorpus(10, {0.8, 0.1, 0.1}, 1);
  CHECK(t.train.size() == 8);
  CHECK(t.valid.size() == 1);
  CHECK(t.test.size() == 1);
  SplitIndices u = SplitCorpus(3, {}, 1);
  CHECK(u.train.size() == 3);
}

TEST_CASE("split partitions and determinism") {
  for (std::size_t n : {3u, 7u, 100u, 257u}) {
    SplitIndices s = SplitCorpus(n, {}, 42);
    std::vector<std::size_t> all;
    for (const auto *part : {&s.train, &s.valid, &s.test}) {
      all.insert(all.end(), part->begin(), part->end());
    }
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> want(n);
    std::iota(want.begin(), want.end(), 0);
    CHECK(all == want);
    SplitIndices again = SplitCorpus(n, {}, 42);
    CHECK(again.train == s.train);
    CHECK(again.valid == s.valid);
    CHECK(again.test == s.test);
  }
  CHECK(SplitCorpus(100, {}, 1).train != SplitCorpus(100, {}, 2).train);
}

TEST_CASE("split errors") {
  CHECK_THROWS_AS(SplitCorpus(2, {}, 1), CorpusError);
  CHECK_THROWS_AS(SplitCorpus(10, {0.5, 0.2, 0.2}, 1), CorpusError);
  CHECK_THROWS_AS(SplitCorpus(10, {1.2, -0.1, -0.1}, 1), CorpusError);
}

TEST_CASE("dataset statistics") {
  LoadResult r = ParseCorpus(Jsonl({RawGame("a", true), RawGame("b", true)}),
                             DefaultSchema());
  REQUIRE(r.samples.size() == 2);
  ContentPlan p1, p2;
  p1.items = {{kHomeTeam, 108, "PTS", Side::kHome, 4},
              {kVisTeam, 96, "PTS", Side::kAway, 6}};
  p2.items = {{kHomeTeam, 108, "PTS", Side::kHome, 4}};
  std::vector<ContentPlan> plans = {p1, p2};
  DatasetStats st = ComputeStats(r.samples, plans);
  CHECK(st.examples == 2);
  CHECK(st.tokens == 26);
  CHECK(st.vocab == 12);
  CHECK(st.avg_sentences == 2);
  CHECK(st.avg_plan_length == 1.5);
  // Team: 9 home + 7 vis numbers; players: PTS, REB, TO, MIN, PF for three
  // of them (Nene has none).
  CHECK(st.avg_numeric_records == 16 + 15);
  // Plus 2 team labels x 2 teams and 5 player labels x 4 players.
  CHECK(st.avg_records == 31 + 4 + 20);
  // Team: PTS WIN LOSS FG_PCT TO PTS_QTR1-4; player: PTS REB TO MIN PF;
  // 7 label types.
  CHECK(st.record_types == 9 + 5 + 7);
  CHECK(ToJson(st).at("examples") == 2);
  CHECK(FormatStats(st).find("avg plan length") != std::string::npos);
  CHECK_THROWS_AS(ComputeStats(std::span<const Sample>{}, std::span<const ContentPlan>{}),
                  CorpusError);
  CHECK_THROWS_AS(ComputeStats(r.samples, std::span<const ContentPlan>(plans).first(1)),
                  CorpusError);
}

TEST_CASE("plan export") {
  LoadResult r = ParseCorpus(Jsonl({RawGame("a", true)}), DefaultSchema());
  ContentPlan p;
  p.items = {{r.samples[0].table.Players()[0], 24, "PTS", Side::kHome, 10}};
  json j = PlanToJson(p, r.samples[0].table);
  REQUIRE(j.size() == 1);
  CHECK(j[0]["entity"] == "0");
  CHECK(j[0]["name"] == "James Harden");
  CHECK(j[0]["value"] == 24);
  CHECK(j[0]["token"] == 10);
}
