#ifndef BOXFACT_CUES_H_
#define BOXFACT_CUES_H_

#include <string>
#include <vector>

#include "boxfact/schema.h"
#include "json.hpp"

namespace boxfact {

// A cue pattern is a whitespace-separated list of elements:
//   NUM      a numeric token (a slot)
//   ...      a gap of 0 to kMaxGap non-numeric tokens
//   a|b|c    one literal token out of the alternatives (case-insensitive)
struct CueElement {
  enum class Kind { kNum, kLiteral, kGap };
  Kind kind = Kind::kLiteral;
  std::vector<std::string> alternatives;  // lowercase; literals only
};

inline constexpr std::size_t kMaxGap = 4;

enum class CueScope { kPlayer, kTeam, kEither };

// How the owning entity of the slots is found.
enum class CueOwner {
  // Nearest preceding mention of an allowed kind in the sentence, else the
  // first allowed entity of the sentence topic.
  kNearest,
  // The mention ending right where the pattern starts ("Rockets ( 18 - 5 )").
  kAnchored,
  // Slot i belongs to the i-th distinct team mentioned in the sentence; with
  // one team mentioned, the second slot goes to its opponent.
  kTeamPair,
};

struct TypeCue {
  std::string pattern_text;
  std::vector<CueElement> pattern;
  // One type per NUM slot.
  std::vector<std::string> emitted_types;
  // Replaces emitted_types when the owner is a team (e.g. FGM -> TEAM_FGM).
  // Empty means emitted_types apply to both kinds.
  std::vector<std::string> team_types;
  CueScope scope = CueScope::kEither;
  CueOwner owner = CueOwner::kNearest;

  std::size_t slot_count() const;
  // Number of non-gap elements; longer cues win ties on one numeral.
  std::size_t length() const;
  const std::string &TypeFor(std::size_t slot, EntityKind owner_kind) const;
  bool Allows(EntityKind kind) const;
};

class CueError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws CueError when the pattern is malformed or the slot count does not
// match the emitted types.
TypeCue MakeCue(std::string pattern, std::vector<std::string> types,
                CueScope scope = CueScope::kEither,
                CueOwner owner = CueOwner::kNearest,
                std::vector<std::string> team_types = {});

// Ordered cue list. Order breaks ties between equally long cues.
class CueLexicon {
 public:
  CueLexicon() = default;
  explicit CueLexicon(std::vector<TypeCue> cues) : cues_(std::move(cues)) {}

  static const CueLexicon &Defaults();
  static CueLexicon FromJson(const nlohmann::json &doc);
  static CueLexicon Load(const std::string &path);
  nlohmann::json ToJson() const;

  const std::vector<TypeCue> &cues() const { return cues_; }
  std::size_t size() const { return cues_.size(); }

 private:
  std::vector<TypeCue> cues_;
};

}  // namespace boxfact

#endif  // BOXFACT_CUES_H_
