#include "boxfact/pipeline.h"

#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>

#include "boxfact/aligner.h"
#include "boxfact/cues.h"
#include "boxfact/metrics.h"
#include "boxfact/replenish.h"
#include "boxfact/template_writer.h"

namespace boxfact {

namespace fs = std::filesystem;
using nlohmann::json;

void ParallelFor(std::size_t n, unsigned threads,
                 const std::function<void(std::size_t)> &fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(threads, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex mu;
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back([&, begin, end] {
        try {
          for (std::size_t i = begin; i < end; ++i) fn(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!first_error) first_error = std::current_exception();
        }
      });
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

struct Context {
  const PipelineConfig &config;
  std::shared_ptr<const SchemaRegistry> schema;
  CueLexicon cues;
  std::optional<AliasOverrides> aliases;
  std::ostream &out;
  std::ostream &err;

  const AliasOverrides *alias_ptr() const {
    return aliases ? &*aliases : nullptr;
  }
  PurifyOptions purify_options() const {
    PurifyOptions o;
    o.align.percent_tolerance = config.percent_tolerance;
    o.align.aliases = alias_ptr();
    o.min_plan_size = config.min_plan_size;
    return o;
  }
};

void WriteFile(const fs::path &path, const std::string &content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw PipelineError("cannot write " + path.string());
  f << content;
  if (!f) throw PipelineError("write failed: " + path.string());
}

fs::path OutPath(const Context &ctx, const std::string &name) {
  fs::create_directories(ctx.config.out_dir);
  return fs::path(ctx.config.out_dir) / name;
}

std::vector<Sample> Load(const Context &ctx, const std::string &path) {
  LoadResult r = LoadCorpus(path, ctx.schema);
  for (const LoadIssue &w : r.warnings) {
    ctx.err << "warning: " << path << ": " << w.game_id << ": " << w.message
            << "\n";
  }
  for (const LoadIssue &w : r.rejected) {
    ctx.err << "rejected: " << path << ": " << w.game_id << ": " << w.message
            << "\n";
  }
  if (r.samples.empty()) throw PipelineError(path + ": no valid games");
  return std::move(r.samples);
}

const std::string &Input(const Context &ctx, std::size_t i) {
  if (ctx.config.inputs.size() <= i) {
    throw PipelineError("missing input corpus argument");
  }
  return ctx.config.inputs[i];
}

json Manifest(const Context &ctx, const std::string &command) {
  const PipelineConfig &c = ctx.config;
  return {{"command", command},
          {"inputs", c.inputs},
          {"schema", c.schema_path.empty() ? "default" : c.schema_path},
          {"cues", c.cues_path.empty() ? "default" : c.cues_path},
          {"aliases", c.aliases_path},
          {"seed", c.seed},
          {"ratios", {c.ratios.train, c.ratios.valid, c.ratios.test}},
          {"percent_tolerance", c.percent_tolerance},
          {"min_plan", c.min_plan_size},
          {"k_players", c.k_players},
          {"replenish", c.replenish}};
}

void WriteManifest(const Context &ctx, const std::string &command,
                   json extra = json::object()) {
  json m = Manifest(ctx, command);
  m.update(extra);
  WriteFile(OutPath(ctx, command + ".manifest.json"), m.dump(2) + "\n");
}

// Replenishment (when enabled) and text normalization, in parallel.
std::vector<Sample> Prepare(const Context &ctx, std::vector<Sample> samples,
                            bool normalize) {
  std::vector<std::vector<std::string>> warnings(samples.size());
  ParallelFor(samples.size(), ctx.config.threads, [&](std::size_t i) {
    if (ctx.config.replenish) {
      ReplenishResult r = Replenish(samples[i].table);
      samples[i].table = std::move(r.table);
      warnings[i] = std::move(r.warnings);
    }
    if (normalize) samples[i] = NormalizeSample(samples[i], ctx.alias_ptr());
  });
  for (const auto &ws : warnings) {
    for (const std::string &w : ws) ctx.err << "warning: " << w << "\n";
  }
  return samples;
}

json PlanLine(const Sample &s, const ContentPlan &plan) {
  return {{"game_id", s.table.game_id()}, {"plan", PlanToJson(plan, s.table)}};
}

int CmdReplenish(const Context &ctx) {
  std::vector<Sample> samples = Load(ctx, Input(ctx, 0));
  std::vector<std::vector<std::string>> warnings(samples.size());
  ParallelFor(samples.size(), ctx.config.threads, [&](std::size_t i) {
    ReplenishResult r = Replenish(samples[i].table);
    samples[i].table = std::move(r.table);
    warnings[i] = std::move(r.warnings);
  });
  std::size_t n_warn = 0;
  for (const auto &ws : warnings) {
    for (const std::string &w : ws) ctx.err << "warning: " << w << "\n";
    n_warn += ws.size();
  }
  SaveCorpus(OutPath(ctx, "replenished.jsonl").string(), samples);
  WriteManifest(ctx, "replenish", {{"games", samples.size()}});
  ctx.out << "replenished " << samples.size() << " games, " << n_warn
          << " warnings\n";
  return 0;
}

int CmdPurify(const Context &ctx) {
  std::vector<Sample> samples = Prepare(ctx, Load(ctx, Input(ctx, 0)), true);
  std::vector<PurifyOutcome> outcomes(samples.size());
  const PurifyOptions options = ctx.purify_options();
  ParallelFor(samples.size(), ctx.config.threads, [&](std::size_t i) {
    outcomes[i] = PurifyDetailed(samples[i], ctx.cues, options);
  });

  std::vector<Sample> kept;
  std::string plans, log;
  std::size_t sentences_in = 0, sentences_out = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const PurifyOutcome &o = outcomes[i];
    const GameTable &table = samples[i].table;
    json runs = json::array();
    for (const RunLog &r : o.runs) {
      runs.push_back(
          {{"first_sentence", r.first_sentence},
           {"last_sentence", r.last_sentence},
           {"head", r.head ? json(table.entity(*r.head).DisplayName())
                           : json(nullptr)},
           {"licensed", r.licensed},
           {"kept", r.kept},
           {"pass", r.pass}});
    }
    const std::size_t in = samples[i].summary.sentence_count();
    const std::size_t out = o.sample ? o.sample->summary.sentence_count() : 0;
    sentences_in += in;
    sentences_out += out;
    json entry = {{"game_id", table.game_id()},
                  {"status", o.discarded ? "discarded" : "kept"},
                  {"passes", o.passes},
                  {"sentences_in", in},
                  {"sentences_out", out},
                  {"plan_size", o.plan.size()},
                  {"runs", runs}};
    if (o.discarded) entry["reason"] = o.reason;
    log += entry.dump() + "\n";
    if (o.sample) {
      plans += PlanLine(*o.sample, o.plan).dump() + "\n";
      kept.push_back(*o.sample);
    }
  }
  SaveCorpus(OutPath(ctx, "purified.jsonl").string(), kept);
  WriteFile(OutPath(ctx, "plans.jsonl"), plans);
  WriteFile(OutPath(ctx, "retention.jsonl"), log);
  WriteManifest(ctx, "purify",
                {{"games_in", samples.size()}, {"games_out", kept.size()}});
  ctx.out << "purified " << samples.size() << " games: kept " << kept.size()
          << ", discarded " << samples.size() - kept.size() << "; sentences "
          << sentences_in << " -> " << sentences_out << "\n";
  return 0;
}

int CmdExtractPlan(const Context &ctx) {
  std::vector<Sample> samples = Prepare(ctx, Load(ctx, Input(ctx, 0)), true);
  std::vector<ContentPlan> plans(samples.size());
  AlignOptions align = ctx.purify_options().align;
  ParallelFor(samples.size(), ctx.config.threads, [&](std::size_t i) {
    plans[i] = ExtractContentPlan(samples[i], ctx.cues, align).plan;
  });
  std::string text;
  std::size_t items = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    text += PlanLine(samples[i], plans[i]).dump() + "\n";
    items += plans[i].size();
  }
  WriteFile(OutPath(ctx, "plans.jsonl"), text);
  WriteManifest(ctx, "extract-plan", {{"games", samples.size()}});
  ctx.out << "extracted " << items << " plan items from " << samples.size()
          << " games\n";
  return 0;
}

std::vector<Tokens> LoadSystemTexts(const Context &ctx, const std::string &path) {
  if (fs::path(path).extension() == ".txt") {
    std::ifstream in(path);
    if (!in) throw PipelineError("cannot open " + path);
    std::vector<Tokens> out;
    std::string line;
    while (std::getline(in, line)) out.push_back(SplitTokens(line));
    return out;
  }
  std::vector<Tokens> out;
  for (Sample &s : Load(ctx, path)) out.push_back(std::move(s.summary.tokens));
  return out;
}

int CmdEvaluate(const Context &ctx) {
  std::vector<Sample> gold = Prepare(ctx, Load(ctx, Input(ctx, 0)), false);
  std::vector<Tokens> sys = LoadSystemTexts(ctx, Input(ctx, 1));
  if (sys.size() != gold.size()) {
    throw PipelineError("gold has " + std::to_string(gold.size()) +
                        " games but system output has " +
                        std::to_string(sys.size()));
  }
  EvalInputs in;
  in.gold_plans.resize(gold.size());
  in.sys_plans.resize(gold.size());
  AlignOptions align = ctx.purify_options().align;
  ParallelFor(gold.size(), ctx.config.threads, [&](std::size_t i) {
    Sample g = NormalizeSample(gold[i], ctx.alias_ptr());
    in.gold_plans[i] = ExtractContentPlan(g, ctx.cues, align).plan;
    Sample s = NormalizeSample(
        Sample{gold[i].table, Summary::FromTokens(sys[i])}, ctx.alias_ptr());
    Extraction ex = ExtractContentPlan(s, ctx.cues, align);
    in.sys_plans[i] = StatedPlan(ex, s.table, align.percent_tolerance);
  });
  for (std::size_t i = 0; i < gold.size(); ++i) {
    in.tables.push_back(&gold[i].table);
    in.gold_texts.push_back(gold[i].summary.tokens);
    in.sys_texts.push_back(std::move(sys[i]));
  }
  MetricsReport report = EvaluateCorpus(in, ctx.config.percent_tolerance);
  json j = ToJson(report);
  WriteFile(OutPath(ctx, "metrics.json"), j.dump(2) + "\n");
  WriteManifest(ctx, "evaluate", {{"games", gold.size()}});
  ctx.out << FormatReport(report);
  return 0;
}

int CmdTemplate(const Context &ctx) {
  std::vector<Sample> samples = Prepare(ctx, Load(ctx, Input(ctx, 0)), false);
  std::vector<std::optional<Summary>> rendered(samples.size());
  std::vector<std::string> errors(samples.size());
  TemplateConfig cfg;
  cfg.k_players = ctx.config.k_players;
  ParallelFor(samples.size(), ctx.config.threads, [&](std::size_t i) {
    try {
      rendered[i] = RenderTemplate(samples[i].table, cfg);
    } catch (const TemplateError &e) {
      errors[i] = e.what();
    }
  });
  std::string lines;
  std::vector<Sample> out;
  std::size_t failed = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!rendered[i]) {
      ctx.err << "error: " << errors[i] << "\n";
      ++failed;
      lines += "\n";  // keeps lines aligned with the input games
      continue;
    }
    lines += JoinTokens(rendered[i]->tokens) + "\n";
    out.push_back(Sample{samples[i].table, *rendered[i]});
  }
  WriteFile(OutPath(ctx, "templates.txt"), lines);
  SaveCorpus(OutPath(ctx, "templates.jsonl").string(), out);
  WriteManifest(ctx, "template", {{"games", samples.size()}, {"failed", failed}});
  ctx.out << "rendered " << out.size() << " of " << samples.size()
          << " games\n";
  return failed == 0 ? 0 : 1;
}

int CmdStats(const Context &ctx) {
  std::vector<Sample> samples = Prepare(ctx, Load(ctx, Input(ctx, 0)), true);
  std::vector<ContentPlan> plans(samples.size());
  AlignOptions align = ctx.purify_options().align;
  ParallelFor(samples.size(), ctx.config.threads, [&](std::size_t i) {
    plans[i] = ExtractContentPlan(samples[i], ctx.cues, align).plan;
  });
  DatasetStats st = ComputeStats(samples, plans);
  WriteFile(OutPath(ctx, "stats.json"), ToJson(st).dump(2) + "\n");
  WriteManifest(ctx, "stats");
  ctx.out << FormatStats(st);
  return 0;
}

int CmdSplit(const Context &ctx) {
  std::vector<Sample> samples = Load(ctx, Input(ctx, 0));
  SplitIndices parts =
      SplitCorpus(samples.size(), ctx.config.ratios, ctx.config.seed);
  json ids = json::object();
  for (auto [name, idx] : {std::pair{"train", &parts.train},
                           {"valid", &parts.valid},
                           {"test", &parts.test}}) {
    std::vector<Sample> part;
    json list = json::array();
    for (std::size_t i : *idx) {
      part.push_back(samples[i]);
      list.push_back(samples[i].table.game_id());
    }
    SaveCorpus(OutPath(ctx, std::string(name) + ".jsonl").string(), part);
    ids[name] = list;
  }
  WriteManifest(ctx, "split",
                {{"sizes",
                  {parts.train.size(), parts.valid.size(), parts.test.size()}},
                 {"game_ids", ids}});
  ctx.out << "split " << samples.size() << " games: train "
          << parts.train.size() << ", valid " << parts.valid.size()
          << ", test " << parts.test.size() << " (seed " << ctx.config.seed
          << ")\n";
  return 0;
}

}  // namespace

int RunPipeline(const PipelineConfig &config, const std::string &command,
                std::ostream &out, std::ostream &err) {
  try {
    if (config.min_plan_size < 1) throw PipelineError("--min-plan must be >= 1");
    Context ctx{config,
                config.schema_path.empty()
                    ? DefaultSchema()
                    : BuildSchema(LoadSchemaDescriptors(config.schema_path)),
                config.cues_path.empty() ? CueLexicon::Defaults()
                                         : CueLexicon::Load(config.cues_path),
                std::nullopt,
                out,
                err};
    if (!config.aliases_path.empty()) {
      ctx.aliases = LoadAliasOverrides(config.aliases_path);
    }
    if (command == "purify") return CmdPurify(ctx);
    if (command == "replenish") return CmdReplenish(ctx);
    if (command == "extract-plan") return CmdExtractPlan(ctx);
    if (command == "evaluate") return CmdEvaluate(ctx);
    if (command == "template") return CmdTemplate(ctx);
    if (command == "stats") return CmdStats(ctx);
    if (command == "split") return CmdSplit(ctx);
    err << "error: unknown subcommand " << command << "\n";
    return 2;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace boxfact
