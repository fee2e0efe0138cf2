#include "boxfact/metrics.h"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>

namespace boxfact {

std::vector<PlanKey> PlanKeys(const ContentPlan &plan) {
  std::vector<PlanKey> keys;
  keys.reserve(plan.size());
  for (const PlanItem &item : plan.items) {
    keys.push_back({item.entity.value, item.value, item.type});
  }
  return keys;
}

double Co(const ContentPlan &gold, const ContentPlan &sys) {
  if (gold.empty() && sys.empty()) return 1.0;
  if (gold.empty() || sys.empty()) return 0.0;
  const std::size_t d = Dld(PlanKeys(gold), PlanKeys(sys));
  return 1.0 - static_cast<double>(d) /
                   static_cast<double>(std::max(gold.size(), sys.size()));
}

CsScore Cs(const ContentPlan &gold, const ContentPlan &sys) {
  auto g = PlanKeys(gold), s = PlanKeys(sys);
  std::set<PlanKey> gs(g.begin(), g.end()), ss(s.begin(), s.end());
  std::size_t common = 0;
  for (const PlanKey &k : ss) common += gs.count(k);
  CsScore out;
  if (!ss.empty()) out.precision = static_cast<double>(common) / ss.size();
  if (!gs.empty()) out.recall = static_cast<double>(common) / gs.size();
  if (out.precision + out.recall > 0) {
    out.f1 = 2 * out.precision * out.recall / (out.precision + out.recall);
  }
  return out;
}

RgScore Rg(const ContentPlan &sys, const GameTable &table,
           double percent_tolerance) {
  RgScore out;
  out.count = sys.size();
  for (const PlanItem &item : sys.items) {
    if (License(item.entity, item.type, item.value, table, percent_tolerance)) {
      ++out.licensed;
    }
  }
  if (out.count == 0) {
    out.undefined = true;
  } else {
    out.precision = static_cast<double>(out.licensed) / out.count;
  }
  return out;
}

namespace {

std::map<std::vector<std::string>, std::size_t> NGrams(const Tokens &tokens,
                                                       std::size_t n) {
  std::map<std::vector<std::string>, std::size_t> out;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++out[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return out;
}

}  // namespace

BleuScore Bleu(std::span<const Tokens> candidates,
               std::span<const Tokens> references) {
  if (candidates.empty()) throw MetricsError("BLEU of an empty corpus");
  if (candidates.size() != references.size()) {
    throw MetricsError("BLEU: " + std::to_string(candidates.size()) +
                       " candidates but " + std::to_string(references.size()) +
                       " references");
  }
  BleuScore out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    out.candidate_length += candidates[i].size();
    out.reference_length += references[i].size();
    for (std::size_t n = 1; n <= 4; ++n) {
      auto cand = NGrams(candidates[i], n);
      auto ref = NGrams(references[i], n);
      for (const auto &[gram, count] : cand) {
        auto it = ref.find(gram);
        if (it != ref.end()) out.matches[n - 1] += std::min(count, it->second);
        out.totals[n - 1] += count;
      }
    }
  }
  double log_sum = 0;
  bool zero = false;
  for (std::size_t n = 0; n < 4; ++n) {
    out.precisions[n] =
        out.totals[n] == 0
            ? 0.0
            : static_cast<double>(out.matches[n]) / out.totals[n];
    if (out.precisions[n] == 0) {
      zero = true;
    } else {
      log_sum += std::log(out.precisions[n]);
    }
  }
  if (out.candidate_length == 0) {
    out.bp = 0.0;
  } else {
    out.bp = std::min(1.0, std::exp(1.0 - static_cast<double>(
                                              out.reference_length) /
                                              out.candidate_length));
  }
  out.bleu = zero ? 0.0 : out.bp * std::exp(log_sum / 4);
  return out;
}

MetricsReport EvaluateCorpus(const EvalInputs &in, double percent_tolerance) {
  const std::size_t n = in.gold_plans.size();
  if (n == 0) throw MetricsError("nothing to evaluate");
  for (std::size_t size : {in.sys_plans.size(), in.tables.size(),
                           in.gold_texts.size(), in.sys_texts.size()}) {
    if (size != n) {
      throw MetricsError("evaluation lists differ in length: " +
                         std::to_string(n) + " vs " + std::to_string(size));
    }
  }
  MetricsReport report;
  report.n_samples = n;
  std::size_t extracted = 0, licensed = 0;
  for (std::size_t i = 0; i < n; ++i) {
    RgScore rg = Rg(in.sys_plans[i], *in.tables[i], percent_tolerance);
    report.rg_count += static_cast<double>(rg.count);
    extracted += rg.count;
    licensed += rg.licensed;
    if (rg.undefined) ++report.rg_undefined;
    CsScore cs = Cs(in.gold_plans[i], in.sys_plans[i]);
    report.cs_precision += cs.precision;
    report.cs_recall += cs.recall;
    report.cs_f1 += cs.f1;
    report.co += Co(in.gold_plans[i], in.sys_plans[i]);
  }
  const double dn = static_cast<double>(n);
  report.rg_count /= dn;
  report.cs_precision /= dn;
  report.cs_recall /= dn;
  report.cs_f1 /= dn;
  report.co /= dn;
  report.rg_precision =
      extracted == 0 ? 0.0 : static_cast<double>(licensed) / extracted;
  report.bleu = Bleu(in.sys_texts, in.gold_texts);
  return report;
}

nlohmann::json ToJson(const MetricsReport &r) {
  nlohmann::json j;
  j["n_samples"] = r.n_samples;
  j["rg_count"] = r.rg_count;
  j["rg_precision"] = r.rg_precision;
  j["rg_undefined"] = r.rg_undefined;
  j["cs_precision"] = r.cs_precision;
  j["cs_recall"] = r.cs_recall;
  j["cs_f1"] = r.cs_f1;
  j["co_dld"] = r.co;
  j["bleu"] = {{"b1", r.bleu.precisions[0]}, {"b2", r.bleu.precisions[1]},
               {"b3", r.bleu.precisions[2]}, {"b4", r.bleu.precisions[3]},
               {"bp", r.bleu.bp},           {"bleu", r.bleu.bleu},
               {"candidate_length", r.bleu.candidate_length},
               {"reference_length", r.bleu.reference_length}};
  return j;
}

std::string FormatReport(const MetricsReport &r) {
  char buf[512];
  std::string out;
  std::snprintf(buf, sizeof buf, "%8s %7s %7s %7s %7s %7s %7s\n", "RG#",
                "RGP", "CSP", "CSR", "CSF", "CO", "BLEU");
  out += buf;
  std::snprintf(buf, sizeof buf,
                "%8.2f %7.2f %7.2f %7.2f %7.2f %7.2f %7.2f\n", r.rg_count,
                100 * r.rg_precision, 100 * r.cs_precision, 100 * r.cs_recall,
                100 * r.cs_f1, 100 * r.co, 100 * r.bleu.bleu);
  out += buf;
  std::snprintf(buf, sizeof buf, "%7s %7s %7s %7s %7s\n", "B1", "B2", "B3",
                "B4", "BP");
  out += buf;
  std::snprintf(buf, sizeof buf, "%7.2f %7.2f %7.2f %7.2f %7.4f\n",
                100 * r.bleu.precisions[0], 100 * r.bleu.precisions[1],
                100 * r.bleu.precisions[2], 100 * r.bleu.precisions[3],
                r.bleu.bp);
  out += buf;
  std::snprintf(buf, sizeof buf, "samples %zu, empty system plans %zu\n",
                r.n_samples, r.rg_undefined);
  out += buf;
  return out;
}

}  // namespace boxfact
