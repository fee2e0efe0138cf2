#ifndef BOXFACT_TESTS_FIXTURES_H_
#define BOXFACT_TESTS_FIXTURES_H_

#include "boxfact/schema.h"

namespace boxfact::testing {

// Rockets 108, Nuggets 96: partial line and box scores plus the original
// nine-sentence recap, whose last two sentences are schedule talk.
GameTable RocketsNuggetsTable();
Sample RocketsNuggets();

inline constexpr EntityIndex kHarden{2};
inline constexpr EntityIndex kHoward{3};
inline constexpr EntityIndex kHickson{4};

}  // namespace boxfact::testing

#endif  // BOXFACT_TESTS_FIXTURES_H_
