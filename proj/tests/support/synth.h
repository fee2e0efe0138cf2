#ifndef BOXFACT_TESTS_SYNTH_H_
#define BOXFACT_TESTS_SYNTH_H_

#include <cstdint>
#include <random>
#include <vector>

#include "boxfact/metrics.h"
#include "boxfact/schema.h"

namespace boxfact::testing {

struct SynthOptions {
  // Small counts sometimes written as words ("seven rebounds").
  bool number_words = true;
  // Percentages sometimes written with a decimal off the table value.
  bool fuzzy_percents = true;
  // Replenish the table before writing the summary.
  bool replenish = true;
};

// A consistent random game (team PTS = sum of player PTS = sum of quarters,
// player PTS = 2 FGM + FG3M + FTM) and a summary in which every numeral is a
// fact about the table, phrased with the default cues.
struct SynthGame {
  Sample sample;
  // What the summary states, in token order, with table values.
  std::vector<PlanKey> facts;
};

GameTable SynthTable(std::mt19937_64 &rng, const std::string &game_id,
                     bool replenish = true);
SynthGame MakeSynthGame(std::uint64_t seed, const SynthOptions &opts = {});

// Appends a two-sentence schedule run about the team not heading the last
// sentence. Its numerals are not table facts. Returns the index of the first
// appended sentence.
std::size_t AppendScheduleRun(Sample &sample, std::mt19937_64 &rng);

}  // namespace boxfact::testing

#endif  // BOXFACT_TESTS_SYNTH_H_
