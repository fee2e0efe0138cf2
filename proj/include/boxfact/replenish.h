#ifndef BOXFACT_REPLENISH_H_
#define BOXFACT_REPLENISH_H_

#include <string>
#include <vector>

#include "boxfact/schema.h"

namespace boxfact {

struct DerivedTypeSpec {
  enum class Op { kSum, kDiff };
  enum class Selector { kQuarters, kPlayers, kStarters, kBench };
  // SUM specs are computed per team; DIFF specs between the two teams.
  enum class Pairing { kPerTeam, kBetweenTeams };

  std::string name;
  Op op = Op::kSum;
  Selector selector = Selector::kQuarters;
  Pairing pairing = Pairing::kPerTeam;
  std::vector<int> quarters;  // 1-based, kQuarters only
  std::string player_type;    // summed player column, player selectors only
};

// TEAM_FGM ... TEAM_FTA.
const std::vector<DerivedTypeSpec> &ShootingSpecs();
// The 12 point breakdowns: 4 quarter-range sums, bench, starters, and 6
// differences.
const std::vector<DerivedTypeSpec> &BreakdownSpecs();

struct ReplenishResult {
  GameTable table;
  std::vector<std::string> warnings;
};

// Team shooting totals summed over each team's players. A player without a
// value counts as 0; a column no player carries is skipped with a warning.
ReplenishResult AggregateShooting(const GameTable &table);

// Quarter-range sums, bench/starter points and per-team differences (own
// minus opponent). Skipped with a warning when quarter points are missing.
ReplenishResult PointBreakdowns(const GameTable &table);

// AggregateShooting then PointBreakdowns. Existing derived values are
// overwritten, so replenishing twice changes nothing.
ReplenishResult Replenish(const GameTable &table);

}  // namespace boxfact

#endif  // BOXFACT_REPLENISH_H_
