#include "boxfact/cues.h"

#include <algorithm>
#include <cctype>
#include <fstream>

namespace boxfact {

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::vector<CueElement> ParsePattern(const std::string &text) {
  std::vector<CueElement> out;
  for (const std::string &piece : SplitTokens(text)) {
    CueElement el;
    if (piece == "NUM") {
      el.kind = CueElement::Kind::kNum;
    } else if (piece == "...") {
      el.kind = CueElement::Kind::kGap;
    } else {
      el.kind = CueElement::Kind::kLiteral;
      std::size_t start = 0;
      while (start <= piece.size()) {
        std::size_t bar = piece.find('|', start);
        if (bar == std::string::npos) bar = piece.size();
        if (bar > start) {
          el.alternatives.push_back(Lower(piece.substr(start, bar - start)));
        }
        start = bar + 1;
      }
      if (el.alternatives.empty()) {
        throw CueError("empty alternative in cue pattern: " + text);
      }
    }
    out.push_back(std::move(el));
  }
  if (out.empty()) throw CueError("empty cue pattern");
  if (out.front().kind == CueElement::Kind::kGap ||
      out.back().kind == CueElement::Kind::kGap) {
    throw CueError("cue pattern cannot start or end with a gap: " + text);
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i].kind == CueElement::Kind::kGap &&
        out[i - 1].kind == CueElement::Kind::kGap) {
      throw CueError("adjacent gaps in cue pattern: " + text);
    }
  }
  return out;
}

std::string_view ToString(CueScope s) {
  switch (s) {
    case CueScope::kPlayer: return "PLAYER";
    case CueScope::kTeam: return "TEAM";
    case CueScope::kEither: return "EITHER";
  }
  return "?";
}

std::string_view ToString(CueOwner o) {
  switch (o) {
    case CueOwner::kNearest: return "NEAREST";
    case CueOwner::kAnchored: return "ANCHORED";
    case CueOwner::kTeamPair: return "TEAM_PAIR";
  }
  return "?";
}

CueScope ParseScope(const std::string &s) {
  if (s == "PLAYER") return CueScope::kPlayer;
  if (s == "TEAM") return CueScope::kTeam;
  if (s == "EITHER") return CueScope::kEither;
  throw CueError("unknown cue scope: " + s);
}

CueOwner ParseOwner(const std::string &s) {
  if (s == "NEAREST") return CueOwner::kNearest;
  if (s == "ANCHORED") return CueOwner::kAnchored;
  if (s == "TEAM_PAIR") return CueOwner::kTeamPair;
  throw CueError("unknown cue owner: " + s);
}

}  // namespace

std::size_t TypeCue::slot_count() const {
  return static_cast<std::size_t>(
      std::count_if(pattern.begin(), pattern.end(), [](const CueElement &e) {
        return e.kind == CueElement::Kind::kNum;
      }));
}

std::size_t TypeCue::length() const {
  return static_cast<std::size_t>(
      std::count_if(pattern.begin(), pattern.end(), [](const CueElement &e) {
        return e.kind != CueElement::Kind::kGap;
      }));
}

const std::string &TypeCue::TypeFor(std::size_t slot,
                                    EntityKind owner_kind) const {
  if (owner_kind == EntityKind::kTeam && !team_types.empty()) {
    return team_types.at(slot);
  }
  return emitted_types.at(slot);
}

bool TypeCue::Allows(EntityKind kind) const {
  switch (scope) {
    case CueScope::kPlayer: return kind == EntityKind::kPlayer;
    case CueScope::kTeam: return kind == EntityKind::kTeam;
    case CueScope::kEither: return true;
  }
  return false;
}

TypeCue MakeCue(std::string pattern, std::vector<std::string> types,
                CueScope scope, CueOwner owner,
                std::vector<std::string> team_types) {
  TypeCue cue;
  cue.pattern = ParsePattern(pattern);
  cue.pattern_text = std::move(pattern);
  cue.emitted_types = std::move(types);
  cue.team_types = std::move(team_types);
  cue.scope = scope;
  cue.owner = owner;
  std::size_t slots = cue.slot_count();
  if (slots == 0) throw CueError("cue without NUM slot: " + cue.pattern_text);
  if (slots != cue.emitted_types.size()) {
    throw CueError("cue '" + cue.pattern_text + "' has " +
                   std::to_string(slots) + " slots but " +
                   std::to_string(cue.emitted_types.size()) + " types");
  }
  if (!cue.team_types.empty() && cue.team_types.size() != slots) {
    throw CueError("cue '" + cue.pattern_text +
                   "' team_types length differs from slot count");
  }
  if (owner == CueOwner::kTeamPair && (slots != 2 || scope != CueScope::kTeam)) {
    throw CueError("TEAM_PAIR cues need two slots and TEAM scope: " +
                   cue.pattern_text);
  }
  return cue;
}

const CueLexicon &CueLexicon::Defaults() {
  using S = CueScope;
  using O = CueOwner;
  static const CueLexicon lexicon(std::vector<TypeCue>{
      // Team records and scores.
      MakeCue("( NUM - NUM )", {"WIN", "LOSS"}, S::kTeam, O::kAnchored),
      MakeCue("improved|improve|improves|fell|fall|falls|dropped|drop|drops|"
              "moved|move|moves|slipped|slip|slips|climbed to NUM - NUM",
              {"WIN", "LOSS"}, S::kTeam),
      MakeCue("NUM - NUM in|during|after the 1st|first quarter|period",
              {"PTS_QTR1", "PTS_QTR1"}, S::kTeam, O::kTeamPair),
      MakeCue("NUM - NUM in|during the 2nd|second quarter|period",
              {"PTS_QTR2", "PTS_QTR2"}, S::kTeam, O::kTeamPair),
      MakeCue("NUM - NUM in|during the 3rd|third quarter|period",
              {"PTS_QTR3", "PTS_QTR3"}, S::kTeam, O::kTeamPair),
      MakeCue("NUM - NUM in|during the 4th|fourth|final quarter|period",
              {"PTS_QTR4", "PTS_QTR4"}, S::kTeam, O::kTeamPair),
      MakeCue("NUM - NUM at|by|into|going|heading halftime|intermission",
              {"PTS_QTR_1to2", "PTS_QTR_1to2"}, S::kTeam, O::kTeamPair),
      MakeCue("NUM - NUM at|by|into the half|break",
              {"PTS_QTR_1to2", "PTS_QTR_1to2"}, S::kTeam, O::kTeamPair),
      MakeCue("NUM - NUM in|during the first|1st half",
              {"PTS_QTR_1to2", "PTS_QTR_1to2"}, S::kTeam, O::kTeamPair),
      MakeCue("NUM points|point in|during the 1st|first quarter|period",
              {"PTS_QTR1"}, S::kTeam),
      MakeCue("NUM points|point in|during the 2nd|second quarter|period",
              {"PTS_QTR2"}, S::kTeam),
      MakeCue("NUM points|point in|during the 3rd|third quarter|period",
              {"PTS_QTR3"}, S::kTeam),
      MakeCue("NUM points|point in|during the 4th|fourth|final quarter|period",
              {"PTS_QTR4"}, S::kTeam),
      MakeCue("NUM points|point in|during the first|1st half",
              {"PTS_QTR_1to2"}, S::kTeam),
      MakeCue("NUM points|point off|from the bench", {"PTS_BENCH"}, S::kTeam),
      MakeCue("NUM bench points", {"PTS_BENCH"}, S::kTeam),
      MakeCue("NUM points|point from the starters|starting", {"PTS_STARTERS"},
              S::kTeam),
      MakeCue("NUM - point lead|advantage|cushion|deficit ... "
              "halftime|half|intermission|break",
              {"DIFF_HALF1"}, S::kTeam),
      MakeCue("led|up by NUM ... halftime|half|intermission|break",
              {"DIFF_HALF1"}, S::kTeam),
      // Shooting lines.
      MakeCue("NUM - NUM FG", {"FGM", "FGA"}, S::kEither, O::kNearest,
              {"TEAM_FGM", "TEAM_FGA"}),
      MakeCue("NUM - NUM 3PT|3pt|3P", {"FG3M", "FG3A"}, S::kEither,
              O::kNearest, {"TEAM_FG3M", "TEAM_FG3A"}),
      MakeCue("NUM - NUM FT", {"FTM", "FTA"}, S::kEither, O::kNearest,
              {"TEAM_FTM", "TEAM_FTA"}),
      MakeCue("NUM - for|of - NUM ... three|threes|3|3pt|3-point|beyond|"
              "downtown|deep|long|arc|triples",
              {"FG3M", "FG3A"}, S::kEither, O::kNearest,
              {"TEAM_FG3M", "TEAM_FG3A"}),
      MakeCue("NUM - for|of - NUM ... field|floor", {"FGM", "FGA"},
              S::kEither, O::kNearest, {"TEAM_FGM", "TEAM_FGA"}),
      MakeCue("NUM - for|of - NUM ... free|charity|stripe", {"FTM", "FTA"},
              S::kEither, O::kNearest, {"TEAM_FTM", "TEAM_FTA"}),
      MakeCue("NUM - for|of - NUM from the line", {"FTM", "FTA"}, S::kEither,
              O::kNearest, {"TEAM_FTM", "TEAM_FTA"}),
      MakeCue("NUM - NUM from|on the field|floor", {"FGM", "FGA"},
              S::kEither, O::kNearest, {"TEAM_FGM", "TEAM_FGA"}),
      // Percentages.
      MakeCue("NUM percent|% ... three|threes|3|3pt|3-point|beyond|downtown|"
              "deep|long|arc|triples",
              {"FG3_PCT"}),
      MakeCue("NUM percent|% ... field|floor", {"FG_PCT"}),
      MakeCue("NUM percent|% ... free|charity|stripe", {"FT_PCT"}),
      MakeCue("NUM percent|% from the line", {"FT_PCT"}),
      // Counting stats.
      MakeCue("NUM - point|points", {"PTS"}),
      MakeCue("NUM points|point|pts", {"PTS"}),
      MakeCue("NUM offensive rebounds|rebound|boards|board", {"OREB"},
              S::kPlayer),
      MakeCue("NUM defensive rebounds|rebound|boards|board", {"DREB"},
              S::kPlayer),
      MakeCue("NUM - rebound|rebounds", {"REB"}),
      MakeCue("NUM rebounds|rebound|boards|board|reb", {"REB"}),
      MakeCue("NUM - assist|assists", {"AST"}),
      MakeCue("NUM assists|assist|dimes|ast", {"AST"}),
      MakeCue("NUM steals|steal|stl", {"STL"}, S::kPlayer),
      MakeCue("NUM blocked shots", {"BLK"}, S::kPlayer),
      MakeCue("NUM blocks|block|blk", {"BLK"}, S::kPlayer),
      MakeCue("NUM turnovers|turnover", {"TO"}),
      MakeCue("NUM minutes|minute|mins|min", {"MIN"}, S::kPlayer),
      MakeCue("NUM personal fouls|foul", {"PF"}, S::kPlayer),
      MakeCue("NUM fouls|foul", {"PF"}, S::kPlayer),
      // Final score, lowest priority among two-numeral patterns.
      MakeCue("NUM - NUM", {"PTS", "PTS"}, S::kTeam, O::kTeamPair),
  });
  return lexicon;
}

CueLexicon CueLexicon::FromJson(const nlohmann::json &doc) {
  if (!doc.is_array()) throw CueError("cue lexicon must be a JSON array");
  std::vector<TypeCue> cues;
  for (const auto &item : doc) {
    try {
      std::string pattern;
      if (item.at("pattern").is_array()) {
        pattern = JoinTokens(item.at("pattern").get<Tokens>());
      } else {
        pattern = item.at("pattern").get<std::string>();
      }
      cues.push_back(MakeCue(
          std::move(pattern), item.at("types").get<std::vector<std::string>>(),
          ParseScope(item.value("scope", "EITHER")),
          ParseOwner(item.value("owner", "NEAREST")),
          item.value("team_types", std::vector<std::string>{})));
    } catch (const nlohmann::json::exception &e) {
      throw CueError(std::string("bad cue entry: ") + e.what());
    }
  }
  return CueLexicon(std::move(cues));
}

CueLexicon CueLexicon::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw CueError("cannot open cue lexicon: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception &e) {
    throw CueError("cue lexicon " + path + ": " + e.what());
  }
  return FromJson(doc);
}

nlohmann::json CueLexicon::ToJson() const {
  nlohmann::json out = nlohmann::json::array();
  for (const TypeCue &cue : cues_) {
    nlohmann::json item;
    item["pattern"] = cue.pattern_text;
    item["types"] = cue.emitted_types;
    if (!cue.team_types.empty()) item["team_types"] = cue.team_types;
    item["scope"] = std::string(ToString(cue.scope));
    item["owner"] = std::string(ToString(cue.owner));
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace boxfact
