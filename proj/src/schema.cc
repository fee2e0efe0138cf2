#include "boxfact/schema.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace boxfact {

namespace {

constexpr std::array<std::string_view, 4> kQuarterTypes = {
    "PTS_QTR1", "PTS_QTR2", "PTS_QTR3", "PTS_QTR4"};

RecordType Player(std::string name, ValueKind kind = ValueKind::kInteger) {
  return {std::move(name), EntityKind::kPlayer, kind, false};
}

RecordType Team(std::string name, ValueKind kind = ValueKind::kInteger,
                bool derived = false) {
  return {std::move(name), EntityKind::kTeam, kind, derived};
}

bool IsSentenceEnd(std::string_view token) {
  return token == "." || token == "!" || token == "?";
}

}  // namespace

std::string JoinTokens(std::span<const std::string> tokens) {
  std::string out;
  for (const std::string &t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

Tokens SplitTokens(std::string_view text) {
  Tokens out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])))
      ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view ToString(EntityKind kind) {
  return kind == EntityKind::kPlayer ? "PLAYER" : "TEAM";
}

std::string_view ToString(Side side) {
  return side == Side::kHome ? "HOME" : "AWAY";
}

std::string_view ToString(ValueKind kind) {
  switch (kind) {
    case ValueKind::kInteger: return "INTEGER";
    case ValueKind::kPercent: return "PERCENT";
    case ValueKind::kLabel: return "LABEL";
  }
  return "?";
}

std::optional<EntityKind> ParseEntityKind(std::string_view s) {
  if (s == "PLAYER") return EntityKind::kPlayer;
  if (s == "TEAM") return EntityKind::kTeam;
  return std::nullopt;
}

std::optional<Side> ParseSide(std::string_view s) {
  if (s == "HOME" || s == "H") return Side::kHome;
  if (s == "AWAY" || s == "A" || s == "VIS") return Side::kAway;
  return std::nullopt;
}

std::optional<ValueKind> ParseValueKind(std::string_view s) {
  if (s == "INTEGER") return ValueKind::kInteger;
  if (s == "PERCENT") return ValueKind::kPercent;
  if (s == "LABEL") return ValueKind::kLabel;
  return std::nullopt;
}

std::string RecordType::QualifiedName() const {
  return std::string(ToString(category)) + "-" + name;
}

SchemaRegistry::SchemaRegistry(std::vector<RecordType> types)
    : types_(std::move(types)) {
  for (std::size_t i = 0; i < types_.size(); ++i) {
    const RecordType &t = types_[i];
    if (t.name.empty()) throw SchemaError("record type with empty name");
    auto [it, inserted] = index_.emplace(t.QualifiedName(), i);
    if (!inserted) {
      throw SchemaError("duplicate record type name: " + t.QualifiedName());
    }
  }
}

const RecordType *SchemaRegistry::Find(EntityKind category,
                                       std::string_view name) const {
  std::string key(ToString(category));
  key += '-';
  key += name;
  auto it = index_.find(key);
  return it == index_.end() ? nullptr : &types_[it->second];
}

std::shared_ptr<const SchemaRegistry> BuildSchema(
    std::vector<RecordType> descriptors) {
  return std::make_shared<const SchemaRegistry>(std::move(descriptors));
}

std::vector<RecordType> DefaultBaseTypes() {
  using VK = ValueKind;
  return {
      // Box score.
      Player("FIRST_NAME", VK::kLabel),
      Player("SECOND_NAME", VK::kLabel),
      Player("PLAYER_NAME", VK::kLabel),
      Player("START_POSITION", VK::kLabel),
      Player("TEAM_CITY", VK::kLabel),
      Player("MIN"),
      Player("PTS"),
      Player("FGM"),
      Player("FGA"),
      Player("FG_PCT", VK::kPercent),
      Player("FG3M"),
      Player("FG3A"),
      Player("FG3_PCT", VK::kPercent),
      Player("FTM"),
      Player("FTA"),
      Player("FT_PCT", VK::kPercent),
      Player("OREB"),
      Player("DREB"),
      Player("REB"),
      Player("AST"),
      Player("TO"),
      Player("STL"),
      Player("BLK"),
      Player("PF"),
      // Line score.
      Team("CITY", VK::kLabel),
      Team("NAME", VK::kLabel),
      Team("PTS_QTR1"),
      Team("PTS_QTR2"),
      Team("PTS_QTR3"),
      Team("PTS_QTR4"),
      Team("PTS"),
      Team("FG_PCT", VK::kPercent),
      Team("FG3_PCT", VK::kPercent),
      Team("FT_PCT", VK::kPercent),
      Team("REB"),
      Team("AST"),
      Team("TO"),
      Team("WIN"),
      Team("LOSS"),
  };
}

std::shared_ptr<const SchemaRegistry> DefaultSchema() {
  static const std::shared_ptr<const SchemaRegistry> schema = [] {
    std::vector<RecordType> types = DefaultBaseTypes();
    for (const char *name :
         {"TEAM_FGM", "TEAM_FGA", "TEAM_FG3M", "TEAM_FG3A", "TEAM_FTM",
          "TEAM_FTA", "PTS_QTR_1to2", "PTS_QTR_1to3", "PTS_QTR_2to3",
          "PTS_QTR_2to4", "PTS_BENCH", "PTS_STARTERS", "DIFF_HALF1",
          "DIFF_HALF2", "DIFF_QTR1", "DIFF_QTR2", "DIFF_QTR3", "DIFF_QTR4"}) {
      types.push_back(Team(name, ValueKind::kInteger, true));
    }
    return BuildSchema(std::move(types));
  }();
  return schema;
}

std::vector<RecordType> LoadSchemaDescriptors(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open schema file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception &e) {
    throw SchemaError("schema file " + path + ": " + e.what());
  }
  if (!doc.is_array()) throw SchemaError("schema file must hold an array");
  std::vector<RecordType> out;
  for (const auto &item : doc) {
    RecordType t;
    t.name = item.at("name").get<std::string>();
    auto cat = ParseEntityKind(item.value("category", "PLAYER"));
    auto kind = ParseValueKind(item.value("value_kind", "INTEGER"));
    if (!cat || !kind) throw SchemaError("bad descriptor for " + t.name);
    t.category = *cat;
    t.value_kind = *kind;
    t.derived = item.value("derived", false);
    out.push_back(std::move(t));
  }
  return out;
}

Entity MakeTeam(std::string id, Side side, std::string_view city,
                std::string_view nickname) {
  Entity e;
  e.id = std::move(id);
  e.kind = EntityKind::kTeam;
  e.side = side;
  e.city = std::string(city);
  e.nickname = std::string(nickname);
  Tokens city_tokens = SplitTokens(city);
  Tokens nick_tokens = SplitTokens(nickname);
  e.canonical_name = city_tokens;
  e.canonical_name.insert(e.canonical_name.end(), nick_tokens.begin(),
                          nick_tokens.end());
  if (e.canonical_name.empty()) throw SchemaError("team without a name");
  e.aliases.push_back(e.canonical_name);
  if (!city_tokens.empty() && !nick_tokens.empty()) {
    e.aliases.push_back(city_tokens);
    e.aliases.push_back(nick_tokens);
  }
  return e;
}

Entity MakePlayer(std::string id, Side side, std::string_view first_name,
                  std::string_view last_name, bool starter) {
  Entity e;
  e.id = std::move(id);
  e.kind = EntityKind::kPlayer;
  e.side = side;
  e.first_name = std::string(first_name);
  e.last_name = std::string(last_name);
  e.starter = starter;
  Tokens first = SplitTokens(first_name);
  Tokens last = SplitTokens(last_name);
  e.canonical_name = first;
  e.canonical_name.insert(e.canonical_name.end(), last.begin(), last.end());
  if (e.canonical_name.empty()) throw SchemaError("player without a name");
  e.aliases.push_back(e.canonical_name);
  if (!first.empty() && !last.empty()) {
    e.aliases.push_back(last);
    e.aliases.push_back(first);
  }
  return e;
}

GameTable::GameTable(std::shared_ptr<const SchemaRegistry> schema,
                     std::string game_id, std::chrono::year_month_day date,
                     Entity home, Entity vis)
    : schema_(std::move(schema)), game_id_(std::move(game_id)), date_(date) {
  if (!schema_) throw SchemaError("GameTable requires a schema");
  if (home.kind != EntityKind::kTeam || vis.kind != EntityKind::kTeam) {
    throw SchemaError("home and visitor must be teams");
  }
  home.side = Side::kHome;
  vis.side = Side::kAway;
  entities_.push_back(std::move(home));
  entities_.push_back(std::move(vis));
}

EntityIndex GameTable::AddPlayer(Entity player) {
  if (player.kind != EntityKind::kPlayer) {
    throw SchemaError("AddPlayer expects a player entity");
  }
  entities_.push_back(std::move(player));
  return EntityIndex{static_cast<std::uint32_t>(entities_.size() - 1)};
}

std::vector<EntityIndex> GameTable::Players() const {
  std::vector<EntityIndex> out;
  for (std::uint32_t i = 2; i < entities_.size(); ++i) out.push_back({i});
  return out;
}

std::vector<EntityIndex> GameTable::Players(Side side) const {
  std::vector<EntityIndex> out;
  for (std::uint32_t i = 2; i < entities_.size(); ++i) {
    if (entities_[i].side == side) out.push_back({i});
  }
  return out;
}

std::string GameTable::Key(EntityIndex entity, std::string_view type) {
  std::string key = std::to_string(entity.value);
  key += ':';
  key += type;
  return key;
}

void GameTable::AddRecord(Record record) {
  index_.emplace(Key(record.entity, record.type), records_.size());
  records_.push_back(std::move(record));
}

void GameTable::SetValue(EntityIndex entity, std::string_view type,
                         double value) {
  const std::string key = Key(entity, type);
  auto it = index_.find(key);
  if (it != index_.end()) {
    records_[it->second].value = value;
    return;
  }
  Record r{entity, std::string(type), value, this->entity(entity).side};
  index_.emplace(key, records_.size());
  records_.push_back(std::move(r));
}

std::optional<double> GameTable::Lookup(EntityIndex entity,
                                        std::string_view type) const {
  auto it = index_.find(Key(entity, type));
  if (it == index_.end()) return std::nullopt;
  return records_[it->second].value;
}

const RecordType *GameTable::TypeOf(EntityIndex entity,
                                    std::string_view type) const {
  if (entity.value >= entities_.size()) return nullptr;
  return schema_->Find(entities_[entity.value].kind, type);
}

namespace {

bool SameEntity(const Entity &a, const Entity &b) {
  return a.id == b.id && a.kind == b.kind &&
         a.canonical_name == b.canonical_name && a.aliases == b.aliases &&
         a.side == b.side && a.first_name == b.first_name &&
         a.last_name == b.last_name && a.start_position == b.start_position &&
         a.team_city == b.team_city && a.starter == b.starter &&
         a.city == b.city && a.nickname == b.nickname;
}

bool SameSchema(const SchemaRegistry &a, const SchemaRegistry &b) {
  if (&a == &b) return true;
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const RecordType &x = a.types()[i];
    const RecordType &y = b.types()[i];
    if (x.name != y.name || x.category != y.category ||
        x.value_kind != y.value_kind || x.derived != y.derived) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool operator==(const GameTable &a, const GameTable &b) {
  if (a.game_id_ != b.game_id_ || a.date_ != b.date_) return false;
  if (!SameSchema(*a.schema_, *b.schema_)) return false;
  if (a.entities_.size() != b.entities_.size()) return false;
  for (std::size_t i = 0; i < a.entities_.size(); ++i) {
    if (!SameEntity(a.entities_[i], b.entities_[i])) return false;
  }
  if (a.records_.size() != b.records_.size()) return false;
  // Record order carries no meaning.
  auto sorted = [](std::vector<Record> rs) {
    std::sort(rs.begin(), rs.end(), [](const Record &x, const Record &y) {
      return std::tie(x.entity.value, x.type, x.value, x.homeaway) <
             std::tie(y.entity.value, y.type, y.value, y.homeaway);
    });
    return rs;
  };
  return sorted(a.records_) == sorted(b.records_);
}

Summary Summary::FromTokens(Tokens tokens) {
  Summary s;
  s.tokens = std::move(tokens);
  for (std::size_t i = 0; i + 1 < s.tokens.size(); ++i) {
    if (IsSentenceEnd(s.tokens[i])) s.sentence_bounds.push_back(i + 1);
  }
  return s;
}

std::size_t Summary::sentence_count() const {
  if (tokens.empty()) return 0;
  return sentence_bounds.size();
}

std::pair<std::size_t, std::size_t> Summary::Sentence(std::size_t i) const {
  std::size_t begin = sentence_bounds.at(i);
  std::size_t end = i + 1 < sentence_bounds.size() ? sentence_bounds[i + 1]
                                                   : tokens.size();
  return {begin, end};
}

std::size_t Summary::SentenceOf(std::size_t token) const {
  auto it = std::upper_bound(sentence_bounds.begin(), sentence_bounds.end(),
                             token);
  return static_cast<std::size_t>(it - sentence_bounds.begin()) - 1;
}

void CheckSummary(const Summary &summary) {
  const auto &b = summary.sentence_bounds;
  if (b.empty() || b.front() != 0) {
    throw SchemaError("sentence bounds must start at 0");
  }
  for (std::size_t i = 1; i < b.size(); ++i) {
    if (b[i] <= b[i - 1]) {
      throw SchemaError("sentence bounds must be strictly increasing");
    }
  }
  if (b.back() > summary.tokens.size()) {
    throw SchemaError("sentence bound past the end of the summary");
  }
}

std::string_view ToString(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kDuplicateRecord: return "duplicate-record";
    case Violation::Kind::kUnknownEntity: return "unknown-entity";
    case Violation::Kind::kUnknownType: return "unknown-type";
    case Violation::Kind::kValueKind: return "value-kind";
    case Violation::Kind::kValueRange: return "value-range";
    case Violation::Kind::kSideMismatch: return "side-mismatch";
    case Violation::Kind::kQuarterSum: return "quarter-sum";
  }
  return "?";
}

std::vector<Violation> ValidateTable(const GameTable &table) {
  std::vector<Violation> out;
  const auto &records = table.records();
  const auto &entities = table.entities();

  std::map<std::pair<std::uint32_t, std::string>, std::vector<std::size_t>>
      by_key;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const Record &r = records[i];
    by_key[{r.entity.value, r.type}].push_back(i);

    if (r.entity.value >= entities.size()) {
      out.push_back({Violation::Kind::kUnknownEntity,
                     "record " + std::to_string(i) + " (" + r.type +
                         ") refers to entity " +
                         std::to_string(r.entity.value) +
                         " outside the roster",
                     {i}});
      continue;
    }
    const Entity &e = entities[r.entity.value];
    const RecordType *type = table.schema().Find(e.kind, r.type);
    if (type == nullptr) {
      out.push_back({Violation::Kind::kUnknownType,
                     "record " + std::to_string(i) + ": no " +
                         std::string(ToString(e.kind)) + " type " + r.type,
                     {i}});
    } else if (type->value_kind == ValueKind::kLabel) {
      out.push_back({Violation::Kind::kValueKind,
                     "record " + std::to_string(i) + ": " + r.type +
                         " is a label column, not a numeric record",
                     {i}});
    } else if (type->value_kind == ValueKind::kInteger &&
               (!std::isfinite(r.value) || r.value != std::floor(r.value))) {
      out.push_back({Violation::Kind::kValueKind,
                     "record " + std::to_string(i) + ": " + r.type + " of " +
                         e.DisplayName() + " is not integral (" +
                         FormatValue(r.value) + ")",
                     {i}});
    } else if (type->value_kind == ValueKind::kPercent &&
               !(r.value >= 0.0 && r.value <= 100.0)) {
      out.push_back({Violation::Kind::kValueRange,
                     "record " + std::to_string(i) + ": " + r.type + " of " +
                         e.DisplayName() + " outside [0,100] (" +
                         FormatValue(r.value) + ")",
                     {i}});
    }
    if (r.homeaway != e.side) {
      out.push_back({Violation::Kind::kSideMismatch,
                     "record " + std::to_string(i) + ": " + r.type + " of " +
                         e.DisplayName() + " marked " +
                         std::string(ToString(r.homeaway)) + " but entity is " +
                         std::string(ToString(e.side)),
                     {i}});
    }
  }

  for (const auto &[key, idx] : by_key) {
    if (idx.size() > 1) {
      std::string who = key.first < entities.size()
                            ? entities[key.first].DisplayName()
                            : std::to_string(key.first);
      out.push_back({Violation::Kind::kDuplicateRecord,
                     std::to_string(idx.size()) + " records for (" + who +
                         ", " + key.second + ")",
                     idx});
    }
  }

  for (EntityIndex team : {kHomeTeam, kVisTeam}) {
    std::vector<std::size_t> involved;
    double sum = 0.0;
    bool complete = true;
    for (std::string_view q : kQuarterTypes) {
      auto it = by_key.find({team.value, std::string(q)});
      if (it == by_key.end()) {
        complete = false;
        break;
      }
      involved.push_back(it->second.front());
      sum += records[it->second.front()].value;
    }
    auto pts = by_key.find({team.value, "PTS"});
    if (!complete || pts == by_key.end()) continue;
    involved.push_back(pts->second.front());
    double total = records[pts->second.front()].value;
    if (sum != total) {
      out.push_back({Violation::Kind::kQuarterSum,
                     entities[team.value].DisplayName() +
                         ": quarter points sum to " + FormatValue(sum) +
                         " but PTS is " + FormatValue(total),
                     involved});
    }
  }
  return out;
}

std::string FormatDate(std::chrono::year_month_day date) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(date.year()),
                unsigned(date.month()), unsigned(date.day()));
  return buf;
}

std::optional<std::chrono::year_month_day> ParseDate(std::string_view text) {
  auto parse_int = [](std::string_view s) -> std::optional<int> {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
  };
  std::optional<int> y, m, d;
  if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
    y = parse_int(text.substr(0, 4));
    m = parse_int(text.substr(5, 2));
    d = parse_int(text.substr(8, 2));
  } else if (text.size() == 8 && text[2] == '_' && text[5] == '_') {
    m = parse_int(text.substr(0, 2));
    d = parse_int(text.substr(3, 2));
    y = parse_int(text.substr(6, 2));
    if (y) *y += 2000;
  }
  if (!y || !m || !d) return std::nullopt;
  std::chrono::year_month_day date{std::chrono::year(*y),
                                   std::chrono::month(unsigned(*m)),
                                   std::chrono::day(unsigned(*d))};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string FormatValue(double value) {
  if (std::isfinite(value) && value == std::floor(value) &&
      std::fabs(value) < 1e15) {
    return std::to_string(static_cast<long long>(value));
  }
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, p);
}

bool IsNumericToken(std::string_view token) {
  return ParseNumericToken(token).has_value();
}

std::optional<double> ParseNumericToken(std::string_view token) {
  if (token.empty() || !std::isdigit(static_cast<unsigned char>(token[0]))) {
    return std::nullopt;
  }
  std::size_t dots = 0;
  for (char c : token) {
    if (c == '.') {
      ++dots;
    } else if (!std::isdigit(static_cast<unsigned char>(c))) {
      return std::nullopt;
    }
  }
  if (dots > 1 || token.back() == '.') return std::nullopt;
  double v = 0;
  auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || p != token.data() + token.size()) {
    return std::nullopt;
  }
  return v;
}

}  // namespace boxfact
