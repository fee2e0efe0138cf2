#ifndef BOXFACT_METRICS_H_
#define BOXFACT_METRICS_H_

#include <algorithm>
#include <array>
#include <compare>
#include <span>
#include <string>
#include <vector>

#include "boxfact/aligner.h"
#include "boxfact/schema.h"
#include "json.hpp"

namespace boxfact {

class MetricsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Optimal string alignment distance: unit-cost insert, delete, substitute
// and adjacent transposition, no edits inside a transposed pair.
template <typename T>
std::size_t Dld(std::span<const T> a, std::span<const T> b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::vector<std::size_t>> d(n + 1,
                                          std::vector<std::size_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + cost});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        d[i][j] = std::min(d[i][j], d[i - 2][j - 2] + 1);
      }
    }
  }
  return d[n][m];
}

template <typename T>
std::size_t Dld(const std::vector<T> &a, const std::vector<T> &b) {
  return Dld(std::span<const T>(a), std::span<const T>(b));
}

// Identity of a plan item for CS and CO: (entity, value, type).
struct PlanKey {
  std::uint32_t entity = 0;
  double value = 0.0;
  std::string type;

  auto operator<=>(const PlanKey &) const = default;
  bool operator==(const PlanKey &) const = default;
};

std::vector<PlanKey> PlanKeys(const ContentPlan &plan);

// 1 - dld / max length; 1 when both are empty, 0 when only one is.
double Co(const ContentPlan &gold, const ContentPlan &sys);

struct CsScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Precision, recall and F1 over the deduplicated key sets.
CsScore Cs(const ContentPlan &gold, const ContentPlan &sys);

struct RgScore {
  std::size_t count = 0;     // items including repeats
  std::size_t licensed = 0;
  double precision = 0.0;
  bool undefined = false;    // empty plan: precision reported as 0
};

RgScore Rg(const ContentPlan &sys, const GameTable &table,
           double percent_tolerance = 1.0);

struct BleuScore {
  std::array<double, 4> precisions{};  // b1..b4
  std::array<std::size_t, 4> matches{};
  std::array<std::size_t, 4> totals{};
  std::size_t candidate_length = 0;
  std::size_t reference_length = 0;
  double bp = 0.0;
  double bleu = 0.0;
};

// Corpus BLEU-4 with clipped counts and no smoothing. Throws MetricsError on
// an empty corpus or a length mismatch.
BleuScore Bleu(std::span<const Tokens> candidates,
               std::span<const Tokens> references);

struct MetricsReport {
  double rg_count = 0.0;      // mean over samples
  double rg_precision = 0.0;  // total licensed / total extracted
  std::size_t rg_undefined = 0;  // samples whose system plan was empty
  double cs_precision = 0.0;
  double cs_recall = 0.0;
  double cs_f1 = 0.0;
  double co = 0.0;
  BleuScore bleu;
  std::size_t n_samples = 0;
};

struct EvalInputs {
  std::vector<ContentPlan> gold_plans;
  std::vector<ContentPlan> sys_plans;
  std::vector<const GameTable *> tables;
  std::vector<Tokens> gold_texts;
  std::vector<Tokens> sys_texts;
};

// RG count and CS/CO are macro averages; RG precision is micro-averaged;
// BLEU is corpus level. Throws MetricsError when empty or when the lists
// differ in length.
MetricsReport EvaluateCorpus(const EvalInputs &inputs,
                             double percent_tolerance = 1.0);

nlohmann::json ToJson(const MetricsReport &report);
// Aligned columns RG# RGP CSP CSR CSF CO BLEU, then the BLEU breakdown.
std::string FormatReport(const MetricsReport &report);

}  // namespace boxfact

#endif  // BOXFACT_METRICS_H_
