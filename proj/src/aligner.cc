#include "boxfact/aligner.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <tuple>

#include "boxfact/numeralize.h"

namespace boxfact {

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

// Matches a cue pattern at one position of a sentence.
class PatternMatcher {
 public:
  PatternMatcher(const std::vector<CueElement> &pattern,
                 const std::vector<std::string> &lower,
                 const std::vector<bool> &numeric, std::size_t end)
      : pattern_(pattern), lower_(lower), numeric_(numeric), end_(end) {}

  // Slot positions of the first match starting at `start`; gaps are tried
  // shortest first.
  bool Match(std::size_t start, std::vector<std::size_t> *slots) {
    slots->clear();
    return Step(0, start, slots);
  }

 private:
  bool Step(std::size_t el, std::size_t pos, std::vector<std::size_t> *slots) {
    if (el == pattern_.size()) return true;
    const CueElement &e = pattern_[el];
    switch (e.kind) {
      case CueElement::Kind::kGap:
        for (std::size_t g = 0; g <= kMaxGap; ++g) {
          if (g > 0) {
            std::size_t last = pos + g - 1;
            if (last >= end_ || numeric_[last]) break;
          }
          if (Step(el + 1, pos + g, slots)) return true;
        }
        return false;
      case CueElement::Kind::kNum:
        if (pos >= end_ || !numeric_[pos]) return false;
        slots->push_back(pos);
        if (Step(el + 1, pos + 1, slots)) return true;
        slots->pop_back();
        return false;
      case CueElement::Kind::kLiteral:
        if (pos >= end_) return false;
        if (std::find(e.alternatives.begin(), e.alternatives.end(),
                      lower_[pos]) == e.alternatives.end()) {
          return false;
        }
        return Step(el + 1, pos + 1, slots);
    }
    return false;
  }

  const std::vector<CueElement> &pattern_;
  const std::vector<std::string> &lower_;
  const std::vector<bool> &numeric_;
  std::size_t end_;
};

struct Choice {
  std::size_t length = 0;
  std::size_t cue = 0;
  std::size_t start = 0;
  EntityIndex entity;
  std::string type;

  // Longest pattern, then earliest cue, then leftmost match.
  bool BetterThan(const Choice &o) const {
    if (length != o.length) return length > o.length;
    if (cue != o.cue) return cue < o.cue;
    return start < o.start;
  }
};

std::optional<EntityIndex> NearestOwner(const TypeCue &cue,
                                        std::span<const Mention> in_sentence,
                                        const std::vector<EntityIndex> &topic,
                                        std::size_t match_start,
                                        const GameTable &table) {
  for (std::size_t i = in_sentence.size(); i-- > 0;) {
    const Mention &m = in_sentence[i];
    if (m.end <= match_start && cue.Allows(m.kind)) return m.entity;
  }
  for (EntityIndex e : topic) {
    if (cue.Allows(table.entity(e).kind)) return e;
  }
  return std::nullopt;
}

std::vector<std::optional<EntityIndex>> ResolveOwners(
    const TypeCue &cue, std::span<const Mention> in_sentence,
    const std::vector<EntityIndex> &topic, std::size_t match_start,
    std::size_t slots, const GameTable &table) {
  std::vector<std::optional<EntityIndex>> owners(slots);
  switch (cue.owner) {
    case CueOwner::kNearest: {
      auto e = NearestOwner(cue, in_sentence, topic, match_start, table);
      std::fill(owners.begin(), owners.end(), e);
      break;
    }
    case CueOwner::kAnchored: {
      for (const Mention &m : in_sentence) {
        if (m.end == match_start && cue.Allows(m.kind)) {
          std::fill(owners.begin(), owners.end(), m.entity);
        }
      }
      break;
    }
    case CueOwner::kTeamPair: {
      std::vector<EntityIndex> teams;
      auto add = [&](EntityIndex e) {
        if (table.entity(e).kind == EntityKind::kTeam &&
            std::find(teams.begin(), teams.end(), e) == teams.end()) {
          teams.push_back(e);
        }
      };
      for (const Mention &m : in_sentence) add(m.entity);
      if (teams.empty()) {
        for (EntityIndex e : topic) add(e);
      }
      if (teams.empty()) break;
      if (teams.size() == 1) {
        teams.push_back(teams[0] == kHomeTeam ? kVisTeam : kHomeTeam);
      }
      for (std::size_t k = 0; k < slots && k < 2; ++k) owners[k] = teams[k];
      break;
    }
  }
  return owners;
}

}  // namespace

SentenceTopics SegmentTopics(const Summary &summary,
                             std::span<const Mention> mentions) {
  const std::size_t n = summary.sentence_count();
  SentenceTopics topics(n);
  for (const Mention &m : mentions) {
    if (m.start >= summary.tokens.size()) continue;
    auto &topic = topics[summary.SentenceOf(m.start)];
    if (std::find(topic.begin(), topic.end(), m.entity) == topic.end()) {
      topic.push_back(m.entity);
    }
  }
  for (std::size_t s = 1; s < n; ++s) {
    if (topics[s].empty() && !topics[s - 1].empty()) {
      topics[s].push_back(topics[s - 1].back());
    }
  }
  return topics;
}

std::vector<Candidate> ProposeCandidates(const Summary &summary,
                                         const SentenceTopics &topics,
                                         std::span<const Mention> mentions,
                                         const CueLexicon &cues,
                                         const GameTable &table) {
  std::vector<Candidate> out;
  const Tokens &tokens = summary.tokens;
  std::vector<std::string> lower(tokens.size());
  std::vector<bool> numeric(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    lower[i] = Lower(tokens[i]);
    numeric[i] = IsNumericToken(tokens[i]);
  }

  std::size_t mention_cursor = 0;
  std::vector<std::size_t> slots;
  for (std::size_t s = 0; s < summary.sentence_count(); ++s) {
    auto [begin, end] = summary.Sentence(s);
    while (mention_cursor < mentions.size() &&
           mentions[mention_cursor].start < begin) {
      ++mention_cursor;
    }
    std::size_t mention_end = mention_cursor;
    while (mention_end < mentions.size() && mentions[mention_end].start < end) {
      ++mention_end;
    }
    std::span<const Mention> in_sentence =
        mentions.subspan(mention_cursor, mention_end - mention_cursor);
    const std::vector<EntityIndex> &topic = topics.at(s);

    std::map<std::size_t, Choice> best;
    for (std::size_t ci = 0; ci < cues.size(); ++ci) {
      const TypeCue &cue = cues.cues()[ci];
      PatternMatcher matcher(cue.pattern, lower, numeric, end);
      for (std::size_t start = begin; start < end; ++start) {
        if (!matcher.Match(start, &slots)) continue;
        auto owners = ResolveOwners(cue, in_sentence, topic, start,
                                    slots.size(), table);
        for (std::size_t k = 0; k < slots.size(); ++k) {
          if (!owners[k]) continue;
          const EntityIndex owner = *owners[k];
          const std::string &type = cue.TypeFor(k, table.entity(owner).kind);
          const RecordType *rt = table.TypeOf(owner, type);
          if (rt == nullptr || rt->value_kind == ValueKind::kLabel) continue;
          Choice c{cue.length(), ci, start, owner, type};
          auto it = best.find(slots[k]);
          if (it == best.end()) {
            best.emplace(slots[k], std::move(c));
          } else if (c.BetterThan(it->second)) {
            it->second = std::move(c);
          }
        }
      }
    }
    for (auto &[token, choice] : best) {
      out.push_back({token, choice.entity, choice.type,
                     *ParseNumericToken(tokens[token]), choice.cue});
    }
    mention_cursor = mention_end;
  }
  return out;
}

std::optional<double> LicensedValue(EntityIndex entity, std::string_view type,
                                    double value, const GameTable &table,
                                    double percent_tolerance) {
  const RecordType *rt = table.TypeOf(entity, type);
  if (rt == nullptr || rt->value_kind == ValueKind::kLabel) return std::nullopt;
  std::optional<double> cell = table.Lookup(entity, type);
  if (!cell) return std::nullopt;
  if (rt->value_kind == ValueKind::kPercent) {
    return RectifyPercent(value, *cell, percent_tolerance);
  }
  if (value == *cell) return *cell;
  return std::nullopt;
}

bool License(EntityIndex entity, std::string_view type, double value,
             const GameTable &table, double percent_tolerance) {
  return LicensedValue(entity, type, value, table, percent_tolerance)
      .has_value();
}

Extraction ExtractContentPlan(const Sample &sample, const CueLexicon &cues,
                              const AlignOptions &options) {
  Extraction ex;
  const GameTable &table = sample.table;
  AliasLexicon lexicon = AliasLexicon::Build(table, options.aliases);
  ex.mentions =
      ResolvePronouns(sample.summary, DetectMentions(sample.summary, lexicon));
  ex.topics = SegmentTopics(sample.summary, ex.mentions);
  ex.candidates =
      ProposeCandidates(sample.summary, ex.topics, ex.mentions, cues, table);
  for (const Candidate &c : ex.candidates) {
    auto v = LicensedValue(c.entity, c.type, c.value, table,
                           options.percent_tolerance);
    if (!v) continue;
    const Side side = table.entity(c.entity).side;
    ex.alignments.push_back({c.token, Record{c.entity, c.type, *v, side}, c.cue});
    ex.plan.items.push_back({c.entity, *v, c.type, side, c.token});
  }
  return ex;
}

ContentPlan StatedPlan(const Extraction &extraction, const GameTable &table,
                       double percent_tolerance) {
  ContentPlan plan;
  for (const Candidate &c : extraction.candidates) {
    auto v = LicensedValue(c.entity, c.type, c.value, table, percent_tolerance);
    plan.items.push_back(
        {c.entity, v.value_or(c.value), c.type, table.entity(c.entity).side,
         c.token});
  }
  return plan;
}

Sample NormalizeSample(const Sample &sample, const AliasOverrides *aliases) {
  Summary numeralized = Numeralize(sample.summary);
  AliasLexicon lexicon = AliasLexicon::Build(sample.table, aliases);
  std::vector<Mention> mentions = DetectMentions(numeralized, lexicon);
  return Sample{sample.table, EntityNormalize(numeralized, mentions, lexicon)};
}

namespace {

struct Run {
  std::size_t first = 0;
  std::size_t last = 0;
  std::optional<EntityIndex> head;
  std::size_t licensed = 0;
};

std::vector<Run> BuildRuns(const SentenceTopics &topics) {
  std::vector<Run> runs;
  for (std::size_t s = 0; s < topics.size(); ++s) {
    std::optional<EntityIndex> head;
    if (!topics[s].empty()) head = topics[s].front();
    if (!runs.empty() && runs.back().head == head) {
      runs.back().last = s;
    } else {
      runs.push_back({s, s, head, 0});
    }
  }
  return runs;
}

}  // namespace

PurifyOutcome PurifyDetailed(const Sample &sample, const CueLexicon &cues,
                             const PurifyOptions &options) {
  PurifyOutcome outcome;
  Sample current = sample;
  // origin[i] = sentence index in the input for sentence i of `current`.
  std::vector<std::size_t> origin(current.summary.sentence_count());
  for (std::size_t i = 0; i < origin.size(); ++i) origin[i] = i;

  Extraction ex;
  while (true) {
    ++outcome.passes;
    ex = ExtractContentPlan(current, cues, options.align);
    std::vector<Run> runs = BuildRuns(ex.topics);
    std::vector<std::size_t> run_of(ex.topics.size());
    for (std::size_t r = 0; r < runs.size(); ++r) {
      for (std::size_t s = runs[r].first; s <= runs[r].last; ++s) run_of[s] = r;
    }
    for (const Alignment &a : ex.alignments) {
      ++runs[run_of[current.summary.SentenceOf(a.token_index)]].licensed;
    }
    bool all_kept = std::all_of(runs.begin(), runs.end(),
                                [](const Run &r) { return r.licensed > 0; });
    Summary next;
    std::vector<std::size_t> next_origin;
    for (const Run &run : runs) {
      const bool kept = run.licensed > 0;
      if (!kept || all_kept) {
        outcome.runs.push_back({origin[run.first], origin[run.last], run.head,
                                run.licensed, kept, outcome.passes});
      }
      if (!kept) continue;
      for (std::size_t s = run.first; s <= run.last; ++s) {
        auto [b, e] = current.summary.Sentence(s);
        if (!next.tokens.empty()) next.sentence_bounds.push_back(next.tokens.size());
        next.tokens.insert(next.tokens.end(), current.summary.tokens.begin() + b,
                           current.summary.tokens.begin() + e);
        next_origin.push_back(origin[s]);
      }
    }
    if (all_kept) break;
    current.summary = std::move(next);
    origin = std::move(next_origin);
  }

  // Rectified percentages take the table's form.
  for (const Alignment &a : ex.alignments) {
    const RecordType *rt = current.table.TypeOf(a.record.entity, a.record.type);
    if (rt == nullptr || rt->value_kind != ValueKind::kPercent) continue;
    std::string &tok = current.summary.tokens[a.token_index];
    if (ParseNumericToken(tok) != a.record.value) {
      tok = FormatValue(a.record.value);
    }
  }

  std::sort(outcome.runs.begin(), outcome.runs.end(),
            [](const RunLog &a, const RunLog &b) {
              return a.first_sentence < b.first_sentence;
            });
  outcome.plan = std::move(ex.plan);
  if (outcome.plan.size() < options.min_plan_size) {
    outcome.discarded = true;
    outcome.reason = "plan has " + std::to_string(outcome.plan.size()) +
                     " records, fewer than " +
                     std::to_string(options.min_plan_size);
    return outcome;
  }
  outcome.sample = std::move(current);
  return outcome;
}

std::optional<Purified> Purify(const Sample &sample, const CueLexicon &cues,
                               const PurifyOptions &options) {
  PurifyOutcome outcome = PurifyDetailed(sample, cues, options);
  if (!outcome.sample) return std::nullopt;
  return Purified{std::move(*outcome.sample), std::move(outcome.plan)};
}

FillbackReport VerifyFillback(const Sample &purified, const ContentPlan &plan,
                              const GameTable &table,
                              double percent_tolerance) {
  FillbackReport report;
  std::map<std::pair<std::uint32_t, std::string>, double> filled;
  std::vector<std::size_t> tokens;
  for (const PlanItem &item : plan.items) {
    filled.emplace(std::make_pair(item.entity.value, item.type), item.value);
    tokens.push_back(item.token);

    const RecordType *rt = table.TypeOf(item.entity, item.type);
    std::optional<double> cell = table.Lookup(item.entity, item.type);
    if (rt == nullptr || !cell) {
      report.mismatches.push_back({item, std::nullopt, "no such cell"});
      continue;
    }
    bool equal = rt->value_kind == ValueKind::kPercent
                     ? RectifyPercent(item.value, *cell, percent_tolerance)
                           .has_value()
                     : item.value == *cell;
    if (!equal) {
      report.mismatches.push_back({item, cell, "value differs"});
    }
  }
  report.filled_cells = filled.size();
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  report.aligned_numerals = tokens.size();
  for (const std::string &t : purified.summary.tokens) {
    if (IsNumericToken(t)) ++report.numerals;
  }
  report.coverage = report.numerals == 0
                        ? 0.0
                        : static_cast<double>(report.aligned_numerals) /
                              static_cast<double>(report.numerals);
  return report;
}

}  // namespace boxfact
