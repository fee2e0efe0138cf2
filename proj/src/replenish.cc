#include "boxfact/replenish.h"

namespace boxfact {

namespace {

using Spec = DerivedTypeSpec;

Spec QuarterSum(std::string name, std::vector<int> quarters) {
  return {std::move(name), Spec::Op::kSum, Spec::Selector::kQuarters,
          Spec::Pairing::kPerTeam, std::move(quarters), ""};
}

Spec QuarterDiff(std::string name, std::vector<int> quarters) {
  return {std::move(name), Spec::Op::kDiff, Spec::Selector::kQuarters,
          Spec::Pairing::kBetweenTeams, std::move(quarters), ""};
}

Spec PlayerSum(std::string name, Spec::Selector selector,
               std::string player_type) {
  return {std::move(name), Spec::Op::kSum, selector, Spec::Pairing::kPerTeam,
          {}, std::move(player_type)};
}

bool Selected(const Entity &player, Spec::Selector selector) {
  switch (selector) {
    case Spec::Selector::kStarters:
      return player.starter;
    case Spec::Selector::kBench:
      return !player.starter;
    default:
      return true;
  }
}

bool SchemaHas(const GameTable &table, const std::string &name,
               std::vector<std::string> &warnings) {
  if (table.schema().Find(EntityKind::kTeam, name) != nullptr) return true;
  warnings.push_back(table.game_id() + ": schema has no TEAM-" + name +
                     ", skipped");
  return false;
}

// Sum of the player column over one side's selected players, or nothing when
// no player of the game carries the column.
std::optional<double> SumPlayers(const GameTable &table, Side side,
                                 const Spec &spec) {
  bool any = false;
  for (EntityIndex p : table.Players()) {
    if (table.Lookup(p, spec.player_type)) any = true;
  }
  if (!any) return std::nullopt;
  double total = 0;
  for (EntityIndex p : table.Players(side)) {
    if (!Selected(table.entity(p), spec.selector)) continue;
    total += table.Lookup(p, spec.player_type).value_or(0.0);
  }
  return total;
}

std::optional<double> SumQuarters(const GameTable &table, EntityIndex team,
                                  const std::vector<int> &quarters) {
  double total = 0;
  for (int q : quarters) {
    auto v = table.Lookup(team, "PTS_QTR" + std::to_string(q));
    if (!v) return std::nullopt;
    total += *v;
  }
  return total;
}

}  // namespace

const std::vector<DerivedTypeSpec> &ShootingSpecs() {
  static const std::vector<Spec> specs = [] {
    std::vector<Spec> out;
    for (const char *col : {"FGM", "FGA", "FG3M", "FG3A", "FTM", "FTA"}) {
      out.push_back(PlayerSum(std::string("TEAM_") + col,
                              Spec::Selector::kPlayers, col));
    }
    return out;
  }();
  return specs;
}

const std::vector<DerivedTypeSpec> &BreakdownSpecs() {
  static const std::vector<Spec> specs = {
      QuarterSum("PTS_QTR_1to2", {1, 2}),
      QuarterSum("PTS_QTR_1to3", {1, 2, 3}),
      QuarterSum("PTS_QTR_2to3", {2, 3}),
      QuarterSum("PTS_QTR_2to4", {2, 3, 4}),
      PlayerSum("PTS_BENCH", Spec::Selector::kBench, "PTS"),
      PlayerSum("PTS_STARTERS", Spec::Selector::kStarters, "PTS"),
      QuarterDiff("DIFF_HALF1", {1, 2}),
      QuarterDiff("DIFF_HALF2", {3, 4}),
      QuarterDiff("DIFF_QTR1", {1}),
      QuarterDiff("DIFF_QTR2", {2}),
      QuarterDiff("DIFF_QTR3", {3}),
      QuarterDiff("DIFF_QTR4", {4}),
  };
  return specs;
}

ReplenishResult AggregateShooting(const GameTable &table) {
  ReplenishResult out{table, {}};
  for (const Spec &spec : ShootingSpecs()) {
    if (!SchemaHas(table, spec.name, out.warnings)) continue;
    for (Side side : {Side::kHome, Side::kAway}) {
      auto total = SumPlayers(table, side, spec);
      if (!total) {
        if (side == Side::kHome) {
          out.warnings.push_back(table.game_id() + ": no player " +
                                 spec.player_type + ", " + spec.name +
                                 " skipped");
        }
        continue;
      }
      out.table.SetValue(table.team(side), spec.name, *total);
    }
  }
  return out;
}

ReplenishResult PointBreakdowns(const GameTable &table) {
  ReplenishResult out{table, {}};
  bool quarters_missing = false;
  for (Side side : {Side::kHome, Side::kAway}) {
    if (!SumQuarters(table, table.team(side), {1, 2, 3, 4})) {
      quarters_missing = true;
    }
  }
  if (quarters_missing) {
    out.warnings.push_back(table.game_id() +
                           ": quarter points missing, quarter breakdowns "
                           "skipped");
  }
  for (const Spec &spec : BreakdownSpecs()) {
    const bool from_quarters = spec.selector == Spec::Selector::kQuarters;
    if (from_quarters && quarters_missing) continue;
    if (!SchemaHas(table, spec.name, out.warnings)) continue;
    for (Side side : {Side::kHome, Side::kAway}) {
      const EntityIndex own = table.team(side);
      const EntityIndex opp =
          table.team(side == Side::kHome ? Side::kAway : Side::kHome);
      std::optional<double> value;
      if (!from_quarters) {
        value = SumPlayers(table, side, spec);
      } else if (spec.op == Spec::Op::kSum) {
        value = SumQuarters(table, own, spec.quarters);
      } else {
        value = *SumQuarters(table, own, spec.quarters) -
                *SumQuarters(table, opp, spec.quarters);
      }
      if (!value) {
        if (side == Side::kHome) {
          out.warnings.push_back(table.game_id() + ": no player " +
                                 spec.player_type + ", " + spec.name +
                                 " skipped");
        }
        continue;
      }
      out.table.SetValue(own, spec.name, *value);
    }
  }
  return out;
}

ReplenishResult Replenish(const GameTable &table) {
  ReplenishResult shooting = AggregateShooting(table);
  ReplenishResult breakdowns = PointBreakdowns(shooting.table);
  breakdowns.warnings.insert(breakdowns.warnings.begin(),
                             shooting.warnings.begin(),
                             shooting.warnings.end());
  return breakdowns;
}

}  // namespace boxfact
