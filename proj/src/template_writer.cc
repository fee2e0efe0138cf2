#include "boxfact/template_writer.h"

#include <algorithm>

namespace boxfact {

namespace {

class Writer {
 public:
  explicit Writer(const GameTable &table) : table_(table) {}

  void Words(std::initializer_list<std::string_view> words) {
    for (std::string_view w : words) out_.summary.tokens.emplace_back(w);
  }
  void Name(EntityIndex e) {
    const Tokens &name = table_.entity(e).canonical_name;
    out_.summary.tokens.insert(out_.summary.tokens.end(), name.begin(),
                               name.end());
  }
  void Value(EntityIndex e, const std::string &type) {
    auto v = table_.Lookup(e, type);
    if (!v) {
      const Entity &ent = table_.entity(e);
      throw TemplateError(table_.game_id() + ": missing " +
                          std::string(ToString(ent.kind)) + "-" + type +
                          " for " + ent.DisplayName());
    }
    out_.stated.items.push_back(
        {e, *v, type, table_.entity(e).side, out_.summary.tokens.size()});
    out_.summary.tokens.push_back(FormatValue(*v));
  }
  void EndSentence() {
    out_.summary.tokens.emplace_back(".");
    out_.summary.sentence_bounds.push_back(out_.summary.tokens.size());
  }
  TemplateOutput Finish() {
    out_.summary.sentence_bounds.pop_back();
    return std::move(out_);
  }

 private:
  const GameTable &table_;
  TemplateOutput out_;
};

double Require(const GameTable &table, EntityIndex e, const char *type) {
  auto v = table.Lookup(e, type);
  if (!v) {
    throw TemplateError(table.game_id() + ": missing " +
                        std::string(ToString(table.entity(e).kind)) + "-" +
                        type + " for " + table.entity(e).DisplayName());
  }
  return *v;
}

}  // namespace

TemplateOutput RenderTemplateWithPlan(const GameTable &table,
                                      const TemplateConfig &cfg) {
  if (cfg.k_players == 0) throw TemplateError("k_players must be at least 1");
  const double home_pts = Require(table, kHomeTeam, "PTS");
  const double vis_pts = Require(table, kVisTeam, "PTS");
  if (home_pts == vis_pts) {
    throw TemplateError(table.game_id() + ": tied score " +
                        FormatValue(home_pts));
  }
  const EntityIndex winner = home_pts > vis_pts ? kHomeTeam : kVisTeam;
  const EntityIndex loser = winner == kHomeTeam ? kVisTeam : kHomeTeam;

  Writer w(table);
  w.Name(winner);
  w.Words({"("});
  w.Value(winner, "WIN");
  w.Words({"-"});
  w.Value(winner, "LOSS");
  w.Words({")", "defeated", "the"});
  w.Name(loser);
  w.Words({"("});
  w.Value(loser, "WIN");
  w.Words({"-"});
  w.Value(loser, "LOSS");
  w.Words({")"});
  w.Value(winner, "PTS");
  w.Words({"-"});
  w.Value(loser, "PTS");
  w.EndSentence();

  struct Ranked {
    EntityIndex player;
    double pts;
    double reb;
    std::string name;
  };
  std::vector<Ranked> ranked;
  for (EntityIndex p : table.Players()) {
    auto pts = table.Lookup(p, "PTS");
    if (!pts) continue;
    ranked.push_back({p, *pts, table.Lookup(p, "REB").value_or(-1.0),
                      table.entity(p).DisplayName()});
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const Ranked &a, const Ranked &b) {
              if (a.pts != b.pts) return a.pts > b.pts;
              if (a.reb != b.reb) return a.reb > b.reb;
              return a.name < b.name;
            });
  if (ranked.size() > cfg.k_players) ranked.resize(cfg.k_players);

  for (const Ranked &r : ranked) {
    const EntityIndex p = r.player;
    w.Name(p);
    w.Words({"scored"});
    w.Value(p, "PTS");
    w.Words({"points", "("});
    w.Value(p, "FGM");
    w.Words({"-"});
    w.Value(p, "FGA");
    w.Words({"FG", ","});
    w.Value(p, "FG3M");
    w.Words({"-"});
    w.Value(p, "FG3A");
    w.Words({"3PT", ","});
    w.Value(p, "FTM");
    w.Words({"-"});
    w.Value(p, "FTA");
    w.Words({"FT", ")", "to", "go", "with"});
    w.Value(p, "REB");
    w.Words({"rebounds"});
    w.EndSentence();
  }
  return w.Finish();
}

Summary RenderTemplate(const GameTable &table, const TemplateConfig &cfg) {
  return RenderTemplateWithPlan(table, cfg).summary;
}

}  // namespace boxfact
