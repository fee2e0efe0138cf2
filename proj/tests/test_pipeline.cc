#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "boxfact/pipeline.h"
#include "synth.h"

using namespace boxfact;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Workspace {
  fs::path dir;
  explicit Workspace(const std::string &name)
      : dir(fs::temp_directory_path() / ("boxfact_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string operator/(const std::string &f) const { return (dir / f).string(); }
};

std::string Slurp(const std::string &path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<json> Lines(const std::string &path) {
  std::vector<json> out;
  std::istringstream in(Slurp(path));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

// Synthetic games, each with a schedule run appended.
std::string WriteCorpus(const Workspace &ws, std::size_t n) {
  std::vector<Sample> samples;
  for (std::size_t i = 0; i < n; ++i) {
    testing::SynthGame g = testing::MakeSynthGame(500 + i);
    std::mt19937_64 rng(i);
    testing::AppendScheduleRun(g.sample, rng);
    samples.push_back(std::move(g.sample));
  }
  const std::string path = ws / "corpus.jsonl";
  SaveCorpus(path, samples);
  return path;
}

int Run(PipelineConfig cfg, const std::string &cmd, std::string *out = nullptr) {
  std::ostringstream o, e;
  cfg.threads = 3;
  int rc = RunPipeline(cfg, cmd, o, e);
  if (out) *out = o.str();
  INFO(cmd << " stderr: " << e.str());
  CHECK(rc == 0);
  return rc;
}

}  // namespace

TEST_CASE("parallel for covers every index and rethrows") {
  std::vector<std::atomic<int>> hits(1000);
  ParallelFor(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (auto &h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(ParallelFor(100, 4,
                              [](std::size_t i) {
                                if (i == 57) throw std::runtime_error("boom");
                              }),
                  std::runtime_error);
  ParallelFor(0, 4, [](std::size_t) { FAIL("no work expected"); });
}

TEST_CASE("purify writes corpus, plans and the retention log") {
  Workspace ws("purify");
  PipelineConfig cfg;
  cfg.inputs = {WriteCorpus(ws, 12)};
  cfg.out_dir = ws.dir.string();
  std::string out;
  Run(cfg, "purify", &out);
  CHECK(out.find("kept 12") != std::string::npos);

  auto purified = LoadCorpus(ws / "purified.jsonl", DefaultSchema());
  CHECK(purified.samples.size() == 12);
  auto plans = Lines(ws / "plans.jsonl");
  REQUIRE(plans.size() == 12);
  auto log = Lines(ws / "retention.jsonl");
  REQUIRE(log.size() == 12);
  for (const json &entry : log) {
    CHECK(entry["status"] == "kept");
    CHECK(entry["sentences_out"].get<int>() + 2 == entry["sentences_in"].get<int>());
    const json &last = entry["runs"].back();
    CHECK(last["kept"] == false);
    CHECK(last["licensed"] == 0);
    for (const json &run : entry["runs"]) {
      if (run["kept"] == true) CHECK(run["licensed"].get<int>() >= 1);
    }
  }
  json manifest = json::parse(Slurp(ws / "purify.manifest.json"));
  CHECK(manifest["seed"] == 20170);
  CHECK(manifest["games_out"] == 12);

  // Purifying the output again keeps every sentence.
  PipelineConfig again = cfg;
  again.inputs = {ws / "purified.jsonl"};
  again.out_dir = (ws.dir / "again").string();
  Run(again, "purify");
  CHECK(Slurp(ws / "again/purified.jsonl") == Slurp(ws / "purified.jsonl"));
}

TEST_CASE("evaluating gold against itself") {
  Workspace ws("self");
  PipelineConfig cfg;
  const std::string corpus = WriteCorpus(ws, 8);
  cfg.out_dir = ws.dir.string();
  cfg.inputs = {corpus};
  Run(cfg, "purify");
  cfg.inputs = {ws / "purified.jsonl", ws / "purified.jsonl"};
  std::string report;
  Run(cfg, "evaluate", &report);
  json m = json::parse(Slurp(ws / "metrics.json"));
  CHECK(m["cs_precision"] == 1.0);
  CHECK(m["cs_recall"] == 1.0);
  CHECK(m["cs_f1"] == 1.0);
  CHECK(m["co_dld"] == 1.0);
  CHECK(m["rg_precision"] == 1.0);
  CHECK(m["bleu"]["bleu"].get<double>() == doctest::Approx(1.0));
  CHECK(report.find("BLEU") != std::string::npos);
}

TEST_CASE("template output evaluates as fully grounded") {
  Workspace ws("template");
  PipelineConfig cfg;
  cfg.inputs = {WriteCorpus(ws, 6)};
  cfg.out_dir = ws.dir.string();
  Run(cfg, "template");
  CHECK(Lines(ws / "templates.jsonl").size() == 6);
  cfg.inputs = {cfg.inputs[0], ws / "templates.txt"};
  Run(cfg, "evaluate");
  json m = json::parse(Slurp(ws / "metrics.json"));
  CHECK(m["rg_precision"] == 1.0);
  CHECK(m["rg_undefined"] == 0);
}

TEST_CASE("split, stats, replenish and extract-plan") {
  Workspace ws("misc");
  PipelineConfig cfg;
  cfg.inputs = {WriteCorpus(ws, 20)};
  cfg.out_dir = ws.dir.string();
  Run(cfg, "split");
  CHECK(Lines(ws / "train.jsonl").size() == 14);
  CHECK(Lines(ws / "valid.jsonl").size() == 3);
  CHECK(Lines(ws / "test.jsonl").size() == 3);
  const std::string first_split = Slurp(ws / "valid.jsonl");
  Run(cfg, "split");
  CHECK(Slurp(ws / "valid.jsonl") == first_split);
  json manifest = json::parse(Slurp(ws / "split.manifest.json"));
  CHECK(manifest.dump().find("game_ids") != std::string::npos);

  Run(cfg, "stats");
  json st = json::parse(Slurp(ws / "stats.json"));
  CHECK(st["examples"] == 20);
  CHECK(st["avg_plan_length"].get<double>() > 5);

  Run(cfg, "replenish");
  auto rep = LoadCorpus(ws / "replenished.jsonl", DefaultSchema());
  REQUIRE(rep.samples.size() == 20);
  CHECK(rep.samples[0].table.Lookup(kHomeTeam, "PTS_BENCH"));

  Run(cfg, "extract-plan");
  CHECK(Lines(ws / "plans.jsonl").size() == 20);
}

TEST_CASE("results do not depend on the thread count") {
  Workspace ws("threads");
  PipelineConfig cfg;
  cfg.inputs = {WriteCorpus(ws, 10)};
  cfg.out_dir = (ws.dir / "a").string();
  Run(cfg, "purify");
  std::ostringstream o, e;
  PipelineConfig one = cfg;
  one.out_dir = (ws.dir / "b").string();
  one.threads = 1;
  CHECK(RunPipeline(one, "purify", o, e) == 0);
  CHECK(Slurp(ws / "a/retention.jsonl") == Slurp(ws / "b/retention.jsonl"));
  CHECK(Slurp(ws / "a/plans.jsonl") == Slurp(ws / "b/plans.jsonl"));
}

TEST_CASE("failures are reported, not thrown") {
  std::ostringstream o, e;
  PipelineConfig cfg;
  cfg.inputs = {"no/such/file.jsonl"};
  CHECK(RunPipeline(cfg, "purify", o, e) == 1);
  CHECK(e.str().find("error") != std::string::npos);
  CHECK(RunPipeline(cfg, "transmogrify", o, e) == 2);
}
