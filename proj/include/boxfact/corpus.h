#ifndef BOXFACT_CORPUS_H_
#define BOXFACT_CORPUS_H_

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "boxfact/aligner.h"
#include "boxfact/schema.h"
#include "json.hpp"

namespace boxfact {

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadIssue {
  std::size_t game = 0;  // position in the file
  std::string game_id;
  std::string message;
};

struct LoadResult {
  std::vector<Sample> samples;
  std::vector<LoadIssue> rejected;
  std::vector<LoadIssue> warnings;
};

struct LoadOptions {
  // Quarter points summing below PTS mean overtime and only warn unless set.
  bool strict_quarter_sum = false;
};

// One game object. Throws CorpusError naming the missing or malformed field;
// recoverable oddities (unknown columns, unparsable cells) go to `warnings`.
Sample ParseGame(const nlohmann::json &game,
                 std::shared_ptr<const SchemaRegistry> schema,
                 std::vector<std::string> *warnings = nullptr,
                 const std::string &fallback_id = "");

// A JSON array of games or one game per line. Malformed JSON throws
// CorpusError with the line; invalid games are rejected individually.
LoadResult ParseCorpus(std::string_view text,
                       std::shared_ptr<const SchemaRegistry> schema,
                       const LoadOptions &options = {});
LoadResult LoadCorpus(const std::string &path,
                      std::shared_ptr<const SchemaRegistry> schema,
                      const LoadOptions &options = {});

nlohmann::json GameToJson(const Sample &sample);
// One game per line, keys sorted, integral values written as integers.
std::string SerializeCorpus(std::span<const Sample> samples);
void SaveCorpus(const std::string &path, std::span<const Sample> samples);

struct SplitRatios {
  double train = 0.70;
  double valid = 0.15;
  double test = 0.15;
};

// Sample indices per part.
struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> valid;
  std::vector<std::size_t> test;
};

// Seeded shuffle, then valid and test take floor(n * ratio) and train the
// rest. Throws CorpusError for fewer than 3 samples or ratios that are
// negative or do not sum to 1.
SplitIndices SplitCorpus(std::size_t n, const SplitRatios &ratios,
                         std::uint64_t seed);

struct DatasetStats {
  std::size_t examples = 0;
  std::size_t tokens = 0;
  std::size_t vocab = 0;
  std::size_t record_types = 0;
  double avg_summary_length = 0.0;
  double avg_sentences = 0.0;
  double avg_plan_length = 0.0;
  double avg_records = 0.0;          // numeric records plus label cells
  double avg_numeric_records = 0.0;
};

// Throws CorpusError on empty input or when plans and samples differ in
// count.
DatasetStats ComputeStats(std::span<const Sample> samples,
                          std::span<const ContentPlan> plans);
nlohmann::json ToJson(const DatasetStats &stats);
std::string FormatStats(const DatasetStats &stats);

// Plan export: per item entity id, canonical name, type, value, side, token.
nlohmann::json PlanToJson(const ContentPlan &plan, const GameTable &table);

}  // namespace boxfact

#endif  // BOXFACT_CORPUS_H_
