#ifndef BOXFACT_MENTIONS_H_
#define BOXFACT_MENTIONS_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "boxfact/schema.h"

namespace boxfact {

// Extra aliases keyed by entity id or canonical name ("Dwight Howard").
using AliasOverrides = std::map<std::string, std::vector<Tokens>>;

// JSON object {key: ["alias one", ["alias", "two"], ...]}.
AliasOverrides LoadAliasOverrides(const std::string &path);

// Alias token sequences of one game's entities. Aliases claimed by more than
// one entity are ambiguous and never match.
class AliasLexicon {
 public:
  static AliasLexicon Build(const GameTable &game,
                            const AliasOverrides *overrides = nullptr);

  // Entities whose alias is exactly `tokens`; empty if unknown.
  std::vector<EntityIndex> Find(std::span<const std::string> tokens) const;
  bool IsAmbiguous(std::span<const std::string> tokens) const;

  const Tokens &CanonicalName(EntityIndex e) const {
    return canonical_.at(e.value);
  }
  EntityKind Kind(EntityIndex e) const { return kinds_.at(e.value); }
  std::size_t max_alias_length() const { return max_len_; }
  const std::map<Tokens, std::vector<EntityIndex>> &entries() const {
    return entries_;
  }

 private:
  std::map<Tokens, std::vector<EntityIndex>> entries_;
  std::vector<Tokens> canonical_;
  std::vector<EntityKind> kinds_;
  std::size_t max_len_ = 0;
};

struct Mention {
  enum class Source { kAlias, kPronoun };
  std::size_t start = 0;
  std::size_t end = 0;
  EntityIndex entity;
  EntityKind kind = EntityKind::kPlayer;
  Source source = Source::kAlias;

  bool operator==(const Mention &) const = default;
};

// Greedy longest match, left to right, non-overlapping; sorted by start.
std::vector<Mention> DetectMentions(const Summary &summary,
                                    const AliasLexicon &lexicon);

// Adds pronoun mentions: he/him/his resolve to the most recent player
// mention, they/them/their to the most recent team mention. Pronouns without
// an antecedent are left out. Returns the merged list sorted by start.
std::vector<Mention> ResolvePronouns(const Summary &summary,
                                     std::span<const Mention> mentions);

// Rewrites every alias mention with the entity's canonical name.
Summary EntityNormalize(const Summary &summary,
                        std::span<const Mention> mentions,
                        const AliasLexicon &lexicon);

}  // namespace boxfact

#endif  // BOXFACT_MENTIONS_H_
