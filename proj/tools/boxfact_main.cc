// boxfact: purify, replenish, extract plans from, evaluate, template and
// split boxscore/summary corpora.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "boxfact/pipeline.h"

int main(int argc, char **argv) {
  boxfact::PipelineConfig config;
  std::string ratios = "0.70,0.15,0.15";
  bool no_replenish = false;
  std::string input, gold, sys;

  CLI::App app{"boxfact: ground summary numerals in boxscore tables"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--schema", config.schema_path, "record type descriptors (JSON)")
      ->check(CLI::ExistingFile);
  app.add_option("--cues", config.cues_path, "cue lexicon (JSON)")
      ->check(CLI::ExistingFile);
  app.add_option("--aliases", config.aliases_path, "extra entity aliases (JSON)")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", config.seed, "split seed")->capture_default_str();
  app.add_option("--ratios", ratios, "train,valid,test")->capture_default_str();
  app.add_option("--min-plan", config.min_plan_size,
                 "discard purified games with fewer plan items")
      ->capture_default_str();
  app.add_option("--percent-tol", config.percent_tolerance,
                 "allowed rounding gap for percentages")
      ->capture_default_str();
  app.add_option("--k-players", config.k_players, "players per template")
      ->capture_default_str();
  app.add_option("--out-dir", config.out_dir, "artifact directory")
      ->capture_default_str();
  app.add_option("--threads", config.threads, "worker threads, 0 = all cores")
      ->capture_default_str();
  app.add_flag("--no-replenish", no_replenish,
               "skip derived team statistics before aligning");

  struct Sub {
    const char *name;
    const char *help;
    bool two_inputs;
  };
  const Sub subs[] = {
      {"purify", "drop ungrounded sentence runs; write corpus, plans, log", false},
      {"replenish", "add derived team statistics", false},
      {"extract-plan", "write content plans", false},
      {"evaluate", "score SYS (corpus or one summary per line) against GOLD", true},
      {"template", "render template summaries", false},
      {"stats", "dataset statistics", false},
      {"split", "seeded train/valid/test split", false},
  };
  for (const Sub &s : subs) {
    CLI::App *cmd = app.add_subcommand(s.name, s.help);
    if (s.two_inputs) {
      cmd->add_option("gold", gold, "gold corpus")
          ->required()
          ->check(CLI::ExistingFile);
      cmd->add_option("sys", sys, "system output")
          ->required()
          ->check(CLI::ExistingFile);
    } else {
      cmd->add_option("corpus", input, "input corpus")
          ->required()
          ->check(CLI::ExistingFile);
    }
  }

  CLI11_PARSE(app, argc, argv);

  std::stringstream rs(ratios);
  std::string part;
  std::vector<double> r;
  try {
    while (std::getline(rs, part, ',')) r.push_back(std::stod(part));
  } catch (const std::exception &) {
    r.clear();
  }
  if (r.size() != 3) {
    std::cerr << "error: --ratios takes three comma-separated numbers\n";
    return 1;
  }
  config.ratios = {r[0], r[1], r[2]};
  config.replenish = !no_replenish;
  config.inputs = gold.empty() ? std::vector<std::string>{input}
                               : std::vector<std::string>{gold, sys};

  const std::string command = app.get_subcommands().front()->get_name();
  return boxfact::RunPipeline(config, command, std::cout, std::cerr);
}
