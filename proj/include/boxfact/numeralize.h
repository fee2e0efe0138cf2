#ifndef BOXFACT_NUMERALIZE_H_
#define BOXFACT_NUMERALIZE_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boxfact/schema.h"

namespace boxfact {

// One rewrite made by NumeralizeTokens. start/end index the input tokens.
struct NumeralSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  int value = 0;
  Tokens original_tokens;
};

struct NumeralizeResult {
  Tokens tokens;
  std::vector<NumeralSpan> spans;
};

// Replaces each maximal run of English cardinal words in [0, 999] with one
// numeral token. Matching is case-insensitive. Accepted forms include
// "twenty - five", "twenty-five" and "one hundred and five". Ordinals and
// "a"/"an" are never converted.
NumeralizeResult NumeralizeTokens(std::span<const std::string> tokens);

// Numeralizes the summary and re-indexes its sentence bounds.
Summary Numeralize(const Summary &summary);

// Returns the table value when both values, rounded to integers, differ by at
// most `tolerance` points; otherwise nothing.
std::optional<double> RectifyPercent(double summary_value, double table_value,
                                     double tolerance = 1.0);

// Re-indexes sentence bounds after rewriting token spans. `spans` must be
// sorted and non-overlapping; span i becomes `replacement_sizes[i]` tokens.
// Bounds that collapse or fall at the end are dropped.
std::vector<std::size_t> ReindexBounds(
    std::span<const std::size_t> bounds, std::size_t token_count,
    std::span<const std::pair<std::size_t, std::size_t>> spans,
    std::span<const std::size_t> replacement_sizes);

}  // namespace boxfact

#endif  // BOXFACT_NUMERALIZE_H_
