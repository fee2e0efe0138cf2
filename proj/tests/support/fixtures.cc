#include "fixtures.h"

namespace boxfact::testing {

GameTable RocketsNuggetsTable() {
  using namespace std::chrono;
  GameTable t(DefaultSchema(), "rockets-nuggets", year{2015} / January / 17,
              MakeTeam("home", Side::kHome, "Houston", "Rockets"),
              MakeTeam("vis", Side::kAway, "Denver", "Nuggets"));
  Entity harden = MakePlayer("0", Side::kHome, "James", "Harden", true);
  harden.team_city = "Houston";
  Entity howard = MakePlayer("1", Side::kHome, "Dwight", "Howard", true);
  howard.team_city = "Houston";
  Entity hickson = MakePlayer("2", Side::kAway, "JJ", "Hickson", true);
  hickson.team_city = "Denver";
  t.AddPlayer(harden);
  t.AddPlayer(howard);
  t.AddPlayer(hickson);

  t.SetValue(kHomeTeam, "WIN", 18);
  t.SetValue(kHomeTeam, "LOSS", 5);
  t.SetValue(kHomeTeam, "PTS", 108);
  t.SetValue(kHomeTeam, "FG_PCT", 44);
  t.SetValue(kVisTeam, "WIN", 10);
  t.SetValue(kVisTeam, "LOSS", 13);
  t.SetValue(kVisTeam, "PTS", 96);
  t.SetValue(kVisTeam, "FG_PCT", 38);
  struct Row {
    EntityIndex e;
    int pts, reb, ast, min;
  };
  for (Row r : {Row{kHarden, 24, 10, 10, 38}, Row{kHoward, 26, 13, 2, 30},
                Row{kHickson, 14, 10, 2, 22}}) {
    t.SetValue(r.e, "PTS", r.pts);
    t.SetValue(r.e, "REB", r.reb);
    t.SetValue(r.e, "AST", r.ast);
    t.SetValue(r.e, "MIN", r.min);
  }
  return t;
}

Sample RocketsNuggets() {
  const char *text =
      "The Houston Rockets ( 18 - 5 ) defeated the Denver Nuggets ( 10 - 13 ) "
      "108 - 96 on Saturday . "
      "Houston has won 2 straight games and 6 of their last 7 . "
      "Dwight Howard returned to action Saturday after missing the Rockets ' "
      "last 11 games with a knee injury . "
      "He was supposed to be limited to 24 minutes in the game , but Dwight "
      "Howard persevered to play 30 minutes and put up a monstrous double - "
      "double of 26 points and 13 rebounds . "
      "Joining Dwight Howard in on the fun was James Harden with a triple - "
      "double of 24 points , 10 rebounds and 10 assists in 38 minutes . "
      "The Rockets ' formidable defense held the Nuggets to just 38 percent "
      "shooting from the field . "
      "Houston will face the Nuggets again in their next game , going on the "
      "road to Denver for their game on Wednesday . "
      "Denver has lost 4 of their last 5 games as they struggle to find "
      "footing during a tough part of their schedule . "
      "Denver will begin a 4 - game homestead hosting the San Antonio Spurs "
      "on Sunday .";
  return Sample{RocketsNuggetsTable(), Summary::FromTokens(SplitTokens(text))};
}

}  // namespace boxfact::testing
