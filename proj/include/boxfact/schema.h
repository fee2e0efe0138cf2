#ifndef BOXFACT_SCHEMA_H_
#define BOXFACT_SCHEMA_H_

#include <chrono>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace boxfact {

using Tokens = std::vector<std::string>;

// Joins tokens with single spaces.
std::string JoinTokens(std::span<const std::string> tokens);
Tokens SplitTokens(std::string_view text);

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EntityKind { kPlayer, kTeam };
enum class Side { kHome, kAway };
enum class ValueKind { kInteger, kPercent, kLabel };

std::string_view ToString(EntityKind kind);
std::string_view ToString(Side side);
std::string_view ToString(ValueKind kind);
std::optional<EntityKind> ParseEntityKind(std::string_view s);
std::optional<Side> ParseSide(std::string_view s);
std::optional<ValueKind> ParseValueKind(std::string_view s);

// Position of an entity inside its GameTable. Teams are always 0 (home) and
// 1 (visitor); players follow in roster order.
struct EntityIndex {
  std::uint32_t value = 0;
  auto operator<=>(const EntityIndex &) const = default;
};

inline constexpr EntityIndex kHomeTeam{0};
inline constexpr EntityIndex kVisTeam{1};

struct RecordType {
  std::string name;
  EntityKind category = EntityKind::kPlayer;
  ValueKind value_kind = ValueKind::kInteger;
  bool derived = false;

  // "PLAYER-PTS", "TEAM-PTS". Unique within a registry.
  std::string QualifiedName() const;
};

// Resolves (category, name) to record types. Immutable once built.
class SchemaRegistry {
 public:
  // Throws SchemaError on a duplicate (category, name).
  explicit SchemaRegistry(std::vector<RecordType> types);

  const RecordType *Find(EntityKind category, std::string_view name) const;
  const std::vector<RecordType> &types() const { return types_; }
  std::size_t size() const { return types_.size(); }

 private:
  std::vector<RecordType> types_;
  std::unordered_map<std::string, std::size_t> index_;
};

std::shared_ptr<const SchemaRegistry> BuildSchema(
    std::vector<RecordType> descriptors);

// The 39 columns of the public boxscore corpus: 24 box-score columns (19
// numeric, 5 roster labels) and 15 line-score columns (13 numeric, 2 labels).
std::vector<RecordType> DefaultBaseTypes();

// Base types plus the derived team types added by replenishment.
std::shared_ptr<const SchemaRegistry> DefaultSchema();

// Schema descriptors from a JSON array of
// {"name", "category", "value_kind", "derived"} objects.
std::vector<RecordType> LoadSchemaDescriptors(const std::string &path);

struct Entity {
  std::string id;
  EntityKind kind = EntityKind::kPlayer;
  Tokens canonical_name;
  std::vector<Tokens> aliases;
  Side side = Side::kHome;

  // Roster columns. Players use first/last name, team_city and
  // start_position; teams use city and nickname.
  std::string first_name;
  std::string last_name;
  std::string start_position;
  std::string team_city;
  bool starter = false;
  std::string city;
  std::string nickname;

  std::string DisplayName() const { return JoinTokens(canonical_name); }
};

// Canonical form "City Nickname"; aliases are the full name, the city and the
// nickname.
Entity MakeTeam(std::string id, Side side, std::string_view city,
                std::string_view nickname);

// Canonical form "First Last"; aliases are the full name, the last name and
// the first name. A single-token name has only itself.
Entity MakePlayer(std::string id, Side side, std::string_view first_name,
                  std::string_view last_name, bool starter);

struct Record {
  EntityIndex entity;
  std::string type;
  double value = 0.0;
  Side homeaway = Side::kHome;

  bool operator==(const Record &) const = default;
};

class GameTable {
 public:
  GameTable(std::shared_ptr<const SchemaRegistry> schema, std::string game_id,
            std::chrono::year_month_day date, Entity home, Entity vis);

  const std::string &game_id() const { return game_id_; }
  std::chrono::year_month_day date() const { return date_; }
  const SchemaRegistry &schema() const { return *schema_; }
  std::shared_ptr<const SchemaRegistry> schema_ptr() const { return schema_; }

  EntityIndex AddPlayer(Entity player);

  const std::vector<Entity> &entities() const { return entities_; }
  const Entity &entity(EntityIndex e) const { return entities_.at(e.value); }
  const Entity &home_team() const { return entities_[0]; }
  const Entity &vis_team() const { return entities_[1]; }
  EntityIndex team(Side side) const {
    return side == Side::kHome ? kHomeTeam : kVisTeam;
  }
  std::vector<EntityIndex> Players() const;
  std::vector<EntityIndex> Players(Side side) const;

  // Appends a record as given, even when the (entity, type) key already
  // exists. Used by loaders and by tests that construct invalid tables.
  void AddRecord(Record record);

  // Inserts or overwrites the value for (entity, type); the record's side is
  // taken from the entity.
  void SetValue(EntityIndex entity, std::string_view type, double value);

  std::optional<double> Lookup(EntityIndex entity, std::string_view type) const;
  const RecordType *TypeOf(EntityIndex entity, std::string_view type) const;

  const std::vector<Record> &records() const { return records_; }

  // Equality over identity, roster and the record set (schema compared by
  // content, record order ignored).
  friend bool operator==(const GameTable &a, const GameTable &b);

 private:
  static std::string Key(EntityIndex entity, std::string_view type);

  std::shared_ptr<const SchemaRegistry> schema_;
  std::string game_id_;
  std::chrono::year_month_day date_;
  std::vector<Entity> entities_;
  std::vector<Record> records_;
  // First record per (entity, type).
  std::unordered_map<std::string, std::size_t> index_;
};

struct Summary {
  Tokens tokens;
  // Sentence start offsets; always begins with 0.
  std::vector<std::size_t> sentence_bounds{0};

  // Splits after ".", "!" and "?".
  static Summary FromTokens(Tokens tokens);

  std::size_t sentence_count() const;
  // Half-open token range of sentence i.
  std::pair<std::size_t, std::size_t> Sentence(std::size_t i) const;
  // Sentence index containing the token.
  std::size_t SentenceOf(std::size_t token) const;

  bool operator==(const Summary &) const = default;
};

// Throws SchemaError when the bounds do not start at 0, are not strictly
// increasing or run past the token count.
void CheckSummary(const Summary &summary);

struct Sample {
  GameTable table;
  Summary summary;
};

struct Violation {
  enum class Kind {
    kDuplicateRecord,
    kUnknownEntity,
    kUnknownType,
    kValueKind,
    kValueRange,
    kSideMismatch,
    kQuarterSum,
  };
  Kind kind;
  std::string message;
  // Indices into GameTable::records().
  std::vector<std::size_t> records;
};

std::string_view ToString(Violation::Kind kind);

// Empty iff every table invariant holds.
std::vector<Violation> ValidateTable(const GameTable &table);

std::string FormatDate(std::chrono::year_month_day date);
// Accepts "YYYY-MM-DD" and the corpus' "MM_DD_YY" form.
std::optional<std::chrono::year_month_day> ParseDate(std::string_view text);

// Integral values print without a fractional part; others use the shortest
// round-tripping decimal form.
std::string FormatValue(double value);
bool IsNumericToken(std::string_view token);
std::optional<double> ParseNumericToken(std::string_view token);

}  // namespace boxfact

#endif  // BOXFACT_SCHEMA_H_
