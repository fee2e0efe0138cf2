#include "boxfact/corpus.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace boxfact {

namespace {

using nlohmann::json;

constexpr const char *kRosterOnly[] = {"STARTER", "HOME_AWAY"};

bool IsMissing(std::string_view s) { return s.empty() || s == "N/A"; }

std::string Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return std::string(s);
}

// Number, numeric string, or nothing for missing cells. Throws on garbage.
std::optional<double> CellValue(const json &cell) {
  if (cell.is_null()) return std::nullopt;
  if (cell.is_number()) return cell.get<double>();
  if (!cell.is_string()) throw CorpusError("not a number");
  std::string s = Trim(cell.get<std::string>());
  if (IsMissing(s)) return std::nullopt;
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw CorpusError("not a number: \"" + s + "\"");
  }
  return v;
}

std::string CellText(const json &cell) {
  if (cell.is_string()) return Trim(cell.get<std::string>());
  if (cell.is_null()) return "";
  return cell.dump();
}

json ValueJson(double v) {
  if (v == std::floor(v) && std::fabs(v) < 9e15) {
    return static_cast<std::int64_t>(v);
  }
  return v;
}

const json &Required(const json &game, const char *field) {
  auto it = game.find(field);
  if (it == game.end() || it->is_null()) {
    throw CorpusError(std::string("missing field ") + field);
  }
  return *it;
}

std::string LineKey(std::string key) {
  if (key.rfind("TEAM-", 0) == 0) key = key.substr(5);
  if (key == "TOV") return "TO";
  if (key == "WINS") return "WIN";
  if (key == "LOSSES") return "LOSS";
  return key;
}

std::string BoxKey(std::string key) { return key == "TOV" ? "TO" : key; }

std::optional<bool> ParseFlag(const json &cell) {
  if (cell.is_boolean()) return cell.get<bool>();
  if (cell.is_number()) return cell.get<double>() != 0;
  std::string s = CellText(cell);
  for (char &c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "1" || s == "true" || s == "yes" || s == "y") return true;
  if (s == "0" || s == "false" || s == "no" || s == "n") return false;
  return std::nullopt;
}

struct TeamLine {
  std::string city;
  std::string name;
  std::map<std::string, double> values;
};

TeamLine ParseLine(const json &line, const char *field,
                   const SchemaRegistry &schema,
                   std::vector<std::string> &warnings) {
  if (!line.is_object()) throw CorpusError(std::string(field) + " is not an object");
  TeamLine out;
  for (const auto &[raw, cell] : line.items()) {
    const std::string key = LineKey(raw);
    if (key == "CITY") {
      out.city = CellText(cell);
      continue;
    }
    if (key == "NAME") {
      out.name = CellText(cell);
      continue;
    }
    const RecordType *t = schema.Find(EntityKind::kTeam, key);
    if (t == nullptr || t->value_kind == ValueKind::kLabel) {
      warnings.push_back(std::string(field) + ": unknown column " + raw +
                         " skipped");
      continue;
    }
    try {
      if (auto v = CellValue(cell)) out.values[key] = *v;
    } catch (const CorpusError &e) {
      warnings.push_back(std::string(field) + "." + raw + ": " + e.what());
    }
  }
  return out;
}

std::string TextField(const json &game, const char *field,
                      const std::string &fallback) {
  auto it = game.find(field);
  if (it != game.end() && it->is_string() && !IsMissing(CellText(*it))) {
    return CellText(*it);
  }
  if (fallback.empty()) throw CorpusError(std::string("missing field ") + field);
  return fallback;
}

std::size_t IndexOf(const std::string &key) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), v);
  if (ec != std::errc() || ptr != key.data() + key.size()) {
    throw CorpusError("box_score player index \"" + key + "\" is not a number");
  }
  return v;
}

}  // namespace

Sample ParseGame(const json &game, std::shared_ptr<const SchemaRegistry> schema,
                 std::vector<std::string> *warnings_out,
                 const std::string &fallback_id) {
  std::vector<std::string> scratch;
  std::vector<std::string> &warnings = warnings_out ? *warnings_out : scratch;
  if (!game.is_object()) throw CorpusError("game is not an object");

  std::string game_id = fallback_id;
  if (auto it = game.find("game_id"); it != game.end() && !it->is_null()) {
    game_id = CellText(*it);
  }

  std::optional<std::chrono::year_month_day> date;
  if (auto it = game.find("date"); it != game.end() && it->is_string()) {
    date = ParseDate(it->get<std::string>());
    if (!date) throw CorpusError("malformed field date");
  } else if (auto d = game.find("day"); d != game.end() && d->is_string()) {
    date = ParseDate(d->get<std::string>());
    if (!date) throw CorpusError("malformed field day");
  } else {
    throw CorpusError("missing field date");
  }

  TeamLine home = ParseLine(Required(game, "home_line"), "home_line", *schema,
                            warnings);
  TeamLine vis =
      ParseLine(Required(game, "vis_line"), "vis_line", *schema, warnings);
  const std::string home_city = TextField(game, "home_city", home.city);
  const std::string home_name = TextField(game, "home_name", home.name);
  const std::string vis_city = TextField(game, "vis_city", vis.city);
  const std::string vis_name = TextField(game, "vis_name", vis.name);

  const json &box = Required(game, "box_score");
  if (!box.is_object()) throw CorpusError("box_score is not an object");
  const json &summary = Required(game, "summary");
  if (!summary.is_array()) throw CorpusError("summary is not a token array");

  GameTable table(schema, game_id, *date,
                  MakeTeam("home", Side::kHome, home_city, home_name),
                  MakeTeam("vis", Side::kAway, vis_city, vis_name));
  for (auto [side, line] : {std::pair{Side::kHome, &home}, {Side::kAway, &vis}}) {
    for (const RecordType &t : schema->types()) {
      if (t.category != EntityKind::kTeam) continue;
      auto it = line->values.find(t.name);
      if (it != line->values.end()) {
        table.SetValue(table.team(side), t.name, it->second);
      }
    }
  }

  // Roster.
  auto names_it = box.find("PLAYER_NAME");
  if (names_it == box.end() || !names_it->is_object()) {
    throw CorpusError("missing field box_score.PLAYER_NAME");
  }
  auto column = [&](const char *name, const std::string &idx) -> const json * {
    auto c = box.find(name);
    if (c == box.end() || !c->is_object()) return nullptr;
    auto cell = c->find(idx);
    return cell == c->end() ? nullptr : &*cell;
  };
  auto text = [&](const char *name, const std::string &idx) {
    const json *cell = column(name, idx);
    return cell ? CellText(*cell) : std::string();
  };

  std::vector<std::pair<std::size_t, std::string>> order;
  for (const auto &[idx, _] : names_it->items()) order.emplace_back(IndexOf(idx), idx);
  std::sort(order.begin(), order.end());

  std::vector<std::pair<std::string, EntityIndex>> players;
  for (const auto &[_, idx] : order) {
    std::string full = text("PLAYER_NAME", idx);
    if (IsMissing(full)) throw CorpusError("player " + idx + " has no PLAYER_NAME");
    std::string first = text("FIRST_NAME", idx);
    std::string last = text("SECOND_NAME", idx);
    if (IsMissing(first) && IsMissing(last)) {
      auto space = full.find(' ');
      first = full.substr(0, space);
      last = space == std::string::npos ? "" : Trim(full.substr(space + 1));
    }
    if (IsMissing(first)) first.clear();
    if (IsMissing(last)) last.clear();

    std::string position = text("START_POSITION", idx);
    std::string team_city = text("TEAM_CITY", idx);
    bool starter = !IsMissing(position);
    if (const json *cell = column("STARTER", idx)) {
      auto flag = ParseFlag(*cell);
      if (!flag) throw CorpusError("player " + idx + ": malformed STARTER");
      starter = *flag;
    }
    Side side;
    if (const json *cell = column("HOME_AWAY", idx)) {
      std::string s = CellText(*cell);
      for (char &c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      if (s == "HOME") {
        side = Side::kHome;
      } else if (s == "AWAY" || s == "VIS") {
        side = Side::kAway;
      } else {
        throw CorpusError("player " + idx + ": malformed HOME_AWAY");
      }
    } else {
      if (home_city == vis_city) {
        throw CorpusError("player " + idx +
                          ": both teams share a city and HOME_AWAY is absent");
      }
      if (team_city == home_city) {
        side = Side::kHome;
      } else if (team_city == vis_city) {
        side = Side::kAway;
      } else {
        throw CorpusError("player " + idx + ": TEAM_CITY \"" + team_city +
                          "\" matches neither team");
      }
    }
    Entity p = MakePlayer(idx, side, first, last, starter);
    p.start_position = position;
    p.team_city = team_city;
    players.emplace_back(idx, table.AddPlayer(std::move(p)));
  }

  // Numeric columns, added in schema order per player.
  std::map<std::string, const json *> numeric;
  for (const auto &[raw, col] : box.items()) {
    const std::string key = BoxKey(raw);
    const RecordType *t = schema->Find(EntityKind::kPlayer, key);
    if (t != nullptr && t->value_kind == ValueKind::kLabel) continue;
    if (std::find(std::begin(kRosterOnly), std::end(kRosterOnly), key) !=
        std::end(kRosterOnly)) {
      continue;
    }
    if (t == nullptr) {
      warnings.push_back("box_score: unknown column " + raw + " skipped");
      continue;
    }
    if (!col.is_object()) throw CorpusError("box_score." + raw + " is not an object");
    numeric[key] = &col;
  }
  for (const auto &[idx, entity] : players) {
    for (const RecordType &t : schema->types()) {
      if (t.category != EntityKind::kPlayer) continue;
      auto it = numeric.find(t.name);
      if (it == numeric.end()) continue;
      auto cell = it->second->find(idx);
      if (cell == it->second->end()) continue;
      try {
        if (auto v = CellValue(*cell)) table.SetValue(entity, t.name, *v);
      } catch (const CorpusError &e) {
        warnings.push_back("box_score." + t.name + "." + idx + ": " + e.what());
      }
    }
  }

  Tokens tokens;
  for (const json &tok : summary) {
    if (!tok.is_string()) throw CorpusError("summary holds a non-string token");
    tokens.push_back(tok.get<std::string>());
  }
  return Sample{std::move(table), Summary::FromTokens(std::move(tokens))};
}

LoadResult ParseCorpus(std::string_view text,
                       std::shared_ptr<const SchemaRegistry> schema,
                       const LoadOptions &options) {
  std::vector<json> games;
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '[') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error &e) {
      throw CorpusError(std::string("corpus is not valid JSON: ") + e.what());
    }
    games.assign(doc.begin(), doc.end());
  } else {
    std::size_t line_no = 0, pos = 0;
    while (pos <= text.size()) {
      std::size_t nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      std::string_view line = text.substr(pos, nl - pos);
      ++line_no;
      pos = nl + 1;
      if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
      try {
        games.push_back(json::parse(line));
      } catch (const json::parse_error &e) {
        throw CorpusError("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
  }

  LoadResult out;
  for (std::size_t i = 0; i < games.size(); ++i) {
    const std::string fallback = "game-" + std::to_string(i);
    std::string id = fallback;
    if (games[i].is_object() && games[i].contains("game_id")) {
      id = CellText(games[i]["game_id"]);
    }
    std::vector<std::string> warnings;
    try {
      Sample s = ParseGame(games[i], schema, &warnings, fallback);
      bool reject = false;
      for (const Violation &v : ValidateTable(s.table)) {
        bool overtime = false;
        if (v.kind == Violation::Kind::kQuarterSum &&
            !options.strict_quarter_sum) {
          const auto &recs = s.table.records();
          double quarters = 0;
          for (std::size_t k = 0; k + 1 < v.records.size(); ++k) {
            quarters += recs[v.records[k]].value;
          }
          overtime = quarters < recs[v.records.back()].value;
        }
        if (overtime) {
          warnings.push_back(v.message + " (overtime)");
        } else {
          out.rejected.push_back({i, id, v.message});
          reject = true;
        }
      }
      if (!reject) out.samples.push_back(std::move(s));
    } catch (const CorpusError &e) {
      out.rejected.push_back({i, id, e.what()});
    } catch (const SchemaError &e) {
      out.rejected.push_back({i, id, e.what()});
    }
    for (std::string &w : warnings) out.warnings.push_back({i, id, std::move(w)});
  }
  return out;
}

LoadResult LoadCorpus(const std::string &path,
                      std::shared_ptr<const SchemaRegistry> schema,
                      const LoadOptions &options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open corpus: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return ParseCorpus(buf.str(), std::move(schema), options);
  } catch (const CorpusError &e) {
    throw CorpusError(path + ": " + e.what());
  }
}

json GameToJson(const Sample &sample) {
  const GameTable &t = sample.table;
  json g;
  g["game_id"] = t.game_id();
  g["date"] = FormatDate(t.date());
  g["home_city"] = t.home_team().city;
  g["home_name"] = t.home_team().nickname;
  g["vis_city"] = t.vis_team().city;
  g["vis_name"] = t.vis_team().nickname;
  g["home_line"] = json::object();
  g["vis_line"] = json::object();
  json box = json::object();
  for (const char *col : {"PLAYER_NAME", "FIRST_NAME", "SECOND_NAME",
                          "START_POSITION", "TEAM_CITY", "STARTER",
                          "HOME_AWAY"}) {
    box[col] = json::object();
  }
  for (EntityIndex p : t.Players()) {
    const Entity &e = t.entity(p);
    box["PLAYER_NAME"][e.id] = e.DisplayName();
    box["FIRST_NAME"][e.id] = e.first_name.empty() ? "N/A" : e.first_name;
    box["SECOND_NAME"][e.id] = e.last_name.empty() ? "N/A" : e.last_name;
    box["START_POSITION"][e.id] =
        e.start_position.empty() ? "N/A" : e.start_position;
    box["TEAM_CITY"][e.id] = e.team_city;
    box["STARTER"][e.id] = e.starter;
    box["HOME_AWAY"][e.id] = e.side == Side::kHome ? "HOME" : "AWAY";
  }
  for (const Record &r : t.records()) {
    const Entity &e = t.entity(r.entity);
    if (e.kind == EntityKind::kTeam) {
      g[r.entity == kHomeTeam ? "home_line" : "vis_line"][r.type] =
          ValueJson(r.value);
    } else {
      box[r.type][e.id] = ValueJson(r.value);
    }
  }
  g["box_score"] = std::move(box);
  g["summary"] = sample.summary.tokens;
  return g;
}

std::string SerializeCorpus(std::span<const Sample> samples) {
  std::string out;
  for (const Sample &s : samples) {
    out += GameToJson(s).dump();
    out += '\n';
  }
  return out;
}

void SaveCorpus(const std::string &path, std::span<const Sample> samples) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CorpusError("cannot write " + path);
  out << SerializeCorpus(samples);
  if (!out) throw CorpusError("write failed: " + path);
}

namespace {

// Uniform draw in [0, bound] by rejection; independent of the standard
// library's distribution implementation.
std::uint64_t Bounded(std::mt19937_64 &rng, std::uint64_t bound) {
  if (bound == 0) return 0;
  if (bound == UINT64_MAX) return rng();
  const std::uint64_t range = bound + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  while (true) {
    std::uint64_t x = rng();
    if (x < limit) return x % range;
  }
}

}  // namespace

SplitIndices SplitCorpus(std::size_t n, const SplitRatios &ratios,
                         std::uint64_t seed) {
  if (n < 3) {
    throw CorpusError("cannot split " + std::to_string(n) +
                      " samples; need at least 3");
  }
  for (double r : {ratios.train, ratios.valid, ratios.test}) {
    if (!(r >= 0.0 && r <= 1.0)) throw CorpusError("split ratio outside [0,1]");
  }
  if (std::fabs(ratios.train + ratios.valid + ratios.test - 1.0) > 1e-6) {
    throw CorpusError("split ratios do not sum to 1");
  }
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(idx[i], idx[Bounded(rng, i)]);
  }
  const auto part = [n](double r) {
    return static_cast<std::size_t>(std::floor(static_cast<double>(n) * r + 1e-9));
  };
  const std::size_t n_valid = part(ratios.valid);
  const std::size_t n_test = part(ratios.test);
  const std::size_t n_train = n - n_valid - n_test;
  SplitIndices out;
  out.train.assign(idx.begin(), idx.begin() + n_train);
  out.valid.assign(idx.begin() + n_train, idx.begin() + n_train + n_valid);
  out.test.assign(idx.begin() + n_train + n_valid, idx.end());
  return out;
}

DatasetStats ComputeStats(std::span<const Sample> samples,
                          std::span<const ContentPlan> plans) {
  if (samples.empty()) throw CorpusError("no samples for statistics");
  if (samples.size() != plans.size()) {
    throw CorpusError("statistics need one plan per sample");
  }
  DatasetStats st;
  st.examples = samples.size();
  std::set<std::string> vocab, types;
  std::size_t sentences = 0, plan_items = 0, records = 0, numeric = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Sample &s = samples[i];
    st.tokens += s.summary.tokens.size();
    vocab.insert(s.summary.tokens.begin(), s.summary.tokens.end());
    sentences += s.summary.sentence_count();
    plan_items += plans[i].size();
    const GameTable &t = s.table;
    for (const Record &r : t.records()) {
      if (const RecordType *rt = t.TypeOf(r.entity, r.type)) {
        types.insert(rt->QualifiedName());
      }
    }
    numeric += t.records().size();
    // Label columns are one cell per entity and label type.
    std::size_t labels = 0;
    for (const RecordType &rt : t.schema().types()) {
      if (rt.value_kind != ValueKind::kLabel) continue;
      types.insert(rt.QualifiedName());
      labels += rt.category == EntityKind::kTeam ? 2 : t.Players().size();
    }
    records += t.records().size() + labels;
  }
  const double n = static_cast<double>(st.examples);
  st.vocab = vocab.size();
  st.record_types = types.size();
  st.avg_summary_length = static_cast<double>(st.tokens) / n;
  st.avg_sentences = static_cast<double>(sentences) / n;
  st.avg_plan_length = static_cast<double>(plan_items) / n;
  st.avg_records = static_cast<double>(records) / n;
  st.avg_numeric_records = static_cast<double>(numeric) / n;
  return st;
}

json ToJson(const DatasetStats &s) {
  return {{"examples", s.examples},
          {"tokens", s.tokens},
          {"vocab", s.vocab},
          {"record_types", s.record_types},
          {"avg_summary_length", s.avg_summary_length},
          {"avg_sentences", s.avg_sentences},
          {"avg_plan_length", s.avg_plan_length},
          {"avg_records", s.avg_records},
          {"avg_numeric_records", s.avg_numeric_records}};
}

std::string FormatStats(const DatasetStats &s) {
  char buf[1024];
  std::snprintf(buf, sizeof buf,
                "examples              %zu\n"
                "tokens                %zu\n"
                "vocab                 %zu\n"
                "record types          %zu\n"
                "avg summary length    %.2f\n"
                "avg sentences         %.2f\n"
                "avg plan length       %.2f\n"
                "avg records           %.2f\n"
                "avg numeric records   %.2f\n",
                s.examples, s.tokens, s.vocab, s.record_types,
                s.avg_summary_length, s.avg_sentences, s.avg_plan_length,
                s.avg_records, s.avg_numeric_records);
  return buf;
}

json PlanToJson(const ContentPlan &plan, const GameTable &table) {
  json items = json::array();
  for (const PlanItem &item : plan.items) {
    const Entity &e = table.entity(item.entity);
    items.push_back({{"entity", e.id},
                     {"name", e.DisplayName()},
                     {"type", item.type},
                     {"value", ValueJson(item.value)},
                     {"homeaway", ToString(item.homeaway)},
                     {"token", item.token}});
  }
  return items;
}

}  // namespace boxfact
