#ifndef BOXFACT_TEMPLATE_WRITER_H_
#define BOXFACT_TEMPLATE_WRITER_H_

#include <stdexcept>

#include "boxfact/aligner.h"
#include "boxfact/schema.h"

namespace boxfact {

class TemplateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TemplateConfig {
  std::size_t k_players = 6;
};

struct TemplateOutput {
  Summary summary;
  // Every numeral written, in order, with its source record.
  ContentPlan stated;
};

// Score line for the winner and loser, then one sentence per top scorer
// (PTS desc, then REB desc, then name). Throws TemplateError naming the
// missing record, on tied scores, or when k_players is 0.
TemplateOutput RenderTemplateWithPlan(const GameTable &table,
                                      const TemplateConfig &cfg = {});
Summary RenderTemplate(const GameTable &table, const TemplateConfig &cfg = {});

}  // namespace boxfact

#endif  // BOXFACT_TEMPLATE_WRITER_H_
