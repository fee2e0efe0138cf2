#ifndef BOXFACT_PIPELINE_H_
#define BOXFACT_PIPELINE_H_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <thread>
#include <vector>

#include "boxfact/corpus.h"

namespace boxfact {

struct PipelineConfig {
  std::vector<std::string> inputs;  // evaluate takes GOLD and SYS
  std::string schema_path;
  std::string cues_path;
  std::string aliases_path;
  SplitRatios ratios;
  std::uint64_t seed = 20170;
  double percent_tolerance = 1.0;
  std::size_t min_plan_size = 5;
  std::size_t k_players = 6;
  std::string out_dir = ".";
  unsigned threads = 0;  // 0: hardware concurrency
  bool replenish = true;
};

class PipelineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runs one subcommand (purify, replenish, extract-plan, evaluate, template,
// stats, split), writing artifacts under out_dir. Returns the exit status;
// diagnostics go to `err`, the human-readable report to `out`.
int RunPipeline(const PipelineConfig &config, const std::string &command,
                std::ostream &out, std::ostream &err);

// Calls fn(i) for i in [0, n) on up to `threads` workers in contiguous
// chunks. The first exception thrown is rethrown after all workers finish.
void ParallelFor(std::size_t n, unsigned threads,
                 const std::function<void(std::size_t)> &fn);

}  // namespace boxfact

#endif  // BOXFACT_PIPELINE_H_
