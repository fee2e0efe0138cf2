#ifndef BOXFACT_ALIGNER_H_
#define BOXFACT_ALIGNER_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boxfact/cues.h"
#include "boxfact/mentions.h"
#include "boxfact/schema.h"

namespace boxfact {

struct AlignOptions {
  // Rounded percent values may differ from the table by this many points.
  double percent_tolerance = 1.0;
  const AliasOverrides *aliases = nullptr;
};

// Ordered entities per sentence.
using SentenceTopics = std::vector<std::vector<EntityIndex>>;

// Entities mentioned in each sentence in order of first mention. A sentence
// without mentions inherits the previous sentence's last entity; leading
// mention-free sentences have an empty topic.
SentenceTopics SegmentTopics(const Summary &summary,
                             std::span<const Mention> mentions);

struct Candidate {
  std::size_t token = 0;
  EntityIndex entity;
  std::string type;
  double value = 0.0;
  std::size_t cue = 0;  // index into the cue lexicon

  bool operator==(const Candidate &) const = default;
};

// One candidate per numeric token that some cue covers with a resolvable
// owner. Among competing cues the longest pattern wins, then the earliest
// cue in lexicon order.
std::vector<Candidate> ProposeCandidates(const Summary &summary,
                                         const SentenceTopics &topics,
                                         std::span<const Mention> mentions,
                                         const CueLexicon &cues,
                                         const GameTable &table);

// The table value a stated (entity, value, type) fact is licensed by: the
// exact record value for integer types, the rectified table value for
// percentages. Nothing when the fact is not licensed.
std::optional<double> LicensedValue(EntityIndex entity, std::string_view type,
                                    double value, const GameTable &table,
                                    double percent_tolerance = 1.0);

bool License(EntityIndex entity, std::string_view type, double value,
             const GameTable &table, double percent_tolerance = 1.0);

struct Alignment {
  std::size_t token_index = 0;
  Record record;
  std::size_t cue = 0;
};

struct PlanItem {
  EntityIndex entity;
  double value = 0.0;
  std::string type;
  Side homeaway = Side::kHome;
  std::size_t token = 0;

  bool operator==(const PlanItem &) const = default;
};

struct ContentPlan {
  std::vector<PlanItem> items;

  std::size_t size() const { return items.size(); }
  bool empty() const { return items.empty(); }
  bool operator==(const ContentPlan &) const = default;
};

struct Extraction {
  ContentPlan plan;
  std::vector<Alignment> alignments;
  std::vector<Mention> mentions;  // aliases and resolved pronouns
  SentenceTopics topics;
  std::vector<Candidate> candidates;
};

// Mentions, topics, candidates and the licensed subset for a normalized
// sample. Plan items carry table values and are ordered by token.
Extraction ExtractContentPlan(const Sample &sample, const CueLexicon &cues,
                              const AlignOptions &options = {});

// Every candidate as a plan item whether licensed or not; licensed items
// carry the table value. Generated text is scored on this plan.
ContentPlan StatedPlan(const Extraction &extraction, const GameTable &table,
                       double percent_tolerance = 1.0);

// Numeralization followed by entity normalization.
Sample NormalizeSample(const Sample &sample,
                       const AliasOverrides *aliases = nullptr);

struct RunLog {
  std::size_t first_sentence = 0;
  std::size_t last_sentence = 0;  // inclusive
  std::optional<EntityIndex> head;
  std::size_t licensed = 0;
  bool kept = false;
  std::size_t pass = 0;  // purification pass that decided the run
};

struct PurifyOutcome {
  // Present unless the sample was discarded.
  std::optional<Sample> sample;
  ContentPlan plan;
  std::vector<RunLog> runs;
  std::size_t passes = 0;
  bool discarded = false;
  std::string reason;
};

struct PurifyOptions {
  AlignOptions align;
  std::size_t min_plan_size = 5;
};

// Keeps maximal runs of consecutive sentences sharing a topic head when the
// run has at least one licensed alignment. Repeats until no run is dropped,
// rewrites percent numerals to their rectified table value, and discards the
// sample if fewer than min_plan_size facts remain.
PurifyOutcome PurifyDetailed(const Sample &sample, const CueLexicon &cues,
                             const PurifyOptions &options = {});

struct Purified {
  Sample sample;
  ContentPlan plan;
};

std::optional<Purified> Purify(const Sample &sample, const CueLexicon &cues,
                               const PurifyOptions &options = {});

struct FillbackMismatch {
  PlanItem item;
  std::optional<double> table_value;
  std::string reason;
};

struct FillbackReport {
  std::vector<FillbackMismatch> mismatches;
  std::size_t filled_cells = 0;
  std::size_t numerals = 0;  // numeric tokens in the summary
  std::size_t aligned_numerals = 0;
  double coverage = 0.0;     // aligned_numerals / numerals, 0 if none
};

// Writes each plan value into an empty table at (entity, type) and compares
// every filled cell with the source table.
FillbackReport VerifyFillback(const Sample &purified, const ContentPlan &plan,
                              const GameTable &table,
                              double percent_tolerance = 1.0);

}  // namespace boxfact

#endif  // BOXFACT_ALIGNER_H_
