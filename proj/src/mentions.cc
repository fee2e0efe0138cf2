#include "boxfact/mentions.h"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "boxfact/numeralize.h"
#include "json.hpp"

namespace boxfact {

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

bool IsPlayerPronoun(std::string_view token) {
  std::string t = Lower(token);
  return t == "he" || t == "him" || t == "his";
}

bool IsTeamPronoun(std::string_view token) {
  std::string t = Lower(token);
  return t == "they" || t == "them" || t == "their";
}

}  // namespace

AliasOverrides LoadAliasOverrides(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open alias file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception &e) {
    throw SchemaError("alias file " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw SchemaError("alias file must hold an object");
  AliasOverrides out;
  for (const auto &[key, list] : doc.items()) {
    if (!list.is_array()) {
      throw SchemaError("aliases for " + key + " must be a list");
    }
    for (const auto &alias : list) {
      Tokens tokens = alias.is_string() ? SplitTokens(alias.get<std::string>())
                                        : alias.get<Tokens>();
      if (tokens.empty()) throw SchemaError("empty alias for " + key);
      out[key].push_back(std::move(tokens));
    }
  }
  return out;
}

AliasLexicon AliasLexicon::Build(const GameTable &game,
                                 const AliasOverrides *overrides) {
  AliasLexicon lex;
  const auto &entities = game.entities();
  for (std::uint32_t i = 0; i < entities.size(); ++i) {
    const Entity &e = entities[i];
    lex.canonical_.push_back(e.canonical_name);
    lex.kinds_.push_back(e.kind);
    std::vector<Tokens> aliases = e.aliases;
    if (overrides != nullptr) {
      for (const std::string &key : {e.id, e.DisplayName()}) {
        auto it = overrides->find(key);
        if (it == overrides->end()) continue;
        aliases.insert(aliases.end(), it->second.begin(), it->second.end());
      }
    }
    for (const Tokens &alias : aliases) {
      if (alias.empty()) continue;
      auto &owners = lex.entries_[alias];
      if (std::find(owners.begin(), owners.end(), EntityIndex{i}) ==
          owners.end()) {
        owners.push_back(EntityIndex{i});
      }
      lex.max_len_ = std::max(lex.max_len_, alias.size());
    }
  }
  return lex;
}

std::vector<EntityIndex> AliasLexicon::Find(
    std::span<const std::string> tokens) const {
  auto it = entries_.find(Tokens(tokens.begin(), tokens.end()));
  if (it == entries_.end()) return {};
  return it->second;
}

bool AliasLexicon::IsAmbiguous(std::span<const std::string> tokens) const {
  return Find(tokens).size() > 1;
}

std::vector<Mention> DetectMentions(const Summary &summary,
                                    const AliasLexicon &lexicon) {
  std::vector<Mention> out;
  const Tokens &tokens = summary.tokens;
  std::size_t i = 0;
  while (i < tokens.size()) {
    bool matched = false;
    std::size_t longest = std::min(lexicon.max_alias_length(), tokens.size() - i);
    for (std::size_t len = longest; len >= 1; --len) {
      std::span<const std::string> window(tokens.data() + i, len);
      std::vector<EntityIndex> owners = lexicon.Find(window);
      if (owners.size() != 1) continue;
      out.push_back({i, i + len, owners[0], lexicon.Kind(owners[0]),
                     Mention::Source::kAlias});
      i += len;
      matched = true;
      break;
    }
    if (!matched) ++i;
  }
  return out;
}

std::vector<Mention> ResolvePronouns(const Summary &summary,
                                     std::span<const Mention> mentions) {
  std::vector<Mention> out(mentions.begin(), mentions.end());
  std::size_t next = 0;
  const Mention *last_player = nullptr;
  const Mention *last_team = nullptr;
  std::vector<Mention> added;
  for (std::size_t t = 0; t < summary.tokens.size(); ++t) {
    while (next < mentions.size() && mentions[next].start <= t) {
      const Mention &m = mentions[next];
      if (m.kind == EntityKind::kPlayer) {
        last_player = &m;
      } else {
        last_team = &m;
      }
      ++next;
    }
    // Pronouns inside an alias span are names, not pronouns.
    if (next > 0 && mentions[next - 1].end > t) continue;
    const std::string &tok = summary.tokens[t];
    const Mention *antecedent = nullptr;
    if (IsPlayerPronoun(tok)) {
      antecedent = last_player;
    } else if (IsTeamPronoun(tok)) {
      antecedent = last_team;
    }
    if (antecedent == nullptr) continue;
    added.push_back({t, t + 1, antecedent->entity, antecedent->kind,
                     Mention::Source::kPronoun});
  }
  out.insert(out.end(), added.begin(), added.end());
  std::sort(out.begin(), out.end(), [](const Mention &a, const Mention &b) {
    return a.start < b.start;
  });
  return out;
}

Summary EntityNormalize(const Summary &summary,
                        std::span<const Mention> mentions,
                        const AliasLexicon &lexicon) {
  Summary out;
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  std::vector<std::size_t> sizes;
  std::size_t t = 0;
  for (const Mention &m : mentions) {
    if (m.source != Mention::Source::kAlias || m.start < t) continue;
    out.tokens.insert(out.tokens.end(), summary.tokens.begin() + t,
                      summary.tokens.begin() + m.start);
    const Tokens &canonical = lexicon.CanonicalName(m.entity);
    out.tokens.insert(out.tokens.end(), canonical.begin(), canonical.end());
    spans.emplace_back(m.start, m.end);
    sizes.push_back(canonical.size());
    t = m.end;
  }
  out.tokens.insert(out.tokens.end(), summary.tokens.begin() + t,
                    summary.tokens.end());
  out.sentence_bounds = ReindexBounds(summary.sentence_bounds,
                                      summary.tokens.size(), spans, sizes);
  return out;
}

}  // namespace boxfact
