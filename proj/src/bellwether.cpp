#include "planwise/bellwether.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "planwise/stats.hpp"

namespace planwise {

std::optional<double> g_score(const Confusion& c) {
  if (c.tp + c.fn == 0 || c.fp + c.tn == 0) return std::nullopt;
  const double recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  const double specificity = 1.0 - static_cast<double>(c.fp) / static_cast<double>(c.fp + c.tn);
  const double denom = recall + specificity;
  return denom > 0 ? 2.0 * recall * specificity / denom : 0.0;
}

std::optional<double> f1_score(const Confusion& c) {
  if (c.tp + c.fn == 0 || c.fp + c.tn == 0) return std::nullopt;
  if (c.tp == 0) return 0.0;
  const double precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  const double recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  return 2.0 * precision * recall / (precision + recall);
}

QualityMeasure quality_measure(std::string_view name) {
  if (name == "g" || name == "g-score" || name == "gscore") return g_score;
  if (name == "f1") return f1_score;
  throw std::invalid_argument("unknown quality measure '" + std::string(name) + "' (expected g or f1)");
}

BellwetherReport discover(const Community& community, std::string_view quality, const TreeParams& params) {
  if (community.projects.size() < 2) throw std::invalid_argument("bellwether discovery needs at least two projects");
  const QualityMeasure measure = quality_measure(quality);

  std::vector<const Project*> order;
  for (const auto& p : community.projects) order.push_back(&p);
  std::sort(order.begin(), order.end(), [](const Project* a, const Project* b) { return a->name < b->name; });

  const std::size_t n = order.size();
  std::vector<VersionedDataset> pooled;
  for (const auto* p : order) {
    if (p->versions.empty()) throw std::invalid_argument("project '" + p->name + "' has no versions");
    // Pool in release order regardless of how the caller listed the versions.
    auto versions = p->versions;
    std::sort(versions.begin(), versions.end(),
              [](const auto& a, const auto& b) { return a.released_order < b.released_order; });
    pooled.push_back(pool(versions, p->name));
  }

  BellwetherReport report;
  report.quality_measure = std::string(quality);
  for (const auto* p : order) report.projects.push_back(p->name);
  report.scores.assign(n, std::vector<std::optional<double>>(n));
  report.per_source_median.assign(n, std::nullopt);

  for (std::size_t s = 0; s < n; ++s) {
    const DecisionTree tree = train_tree(pooled[s], params);
    std::vector<double> defined;
    for (std::size_t t = 0; t < n; ++t) {
      if (s == t) continue;
      Confusion c;
      for (const auto& r : pooled[t].records) {
        const bool predicted = predict_defective(tree, r);
        if (r.defective()) {
          predicted ? ++c.tp : ++c.fn;
        } else {
          predicted ? ++c.fp : ++c.tn;
        }
      }
      report.scores[s][t] = measure(c);
      if (report.scores[s][t]) defined.push_back(*report.scores[s][t]);
    }
    if (!defined.empty()) report.per_source_median[s] = stats::median(defined);
  }

  std::size_t best = 0;
  for (std::size_t s = 1; s < n; ++s) {
    const auto& cand = report.per_source_median[s];
    const auto& inc = report.per_source_median[best];
    if (cand && (!inc || *cand > *inc)) best = s;
  }
  report.bellwether = report.projects[best];
  return report;
}

Plan belltree_plan(const VersionedDataset& bellwether_data, const ClassRecord& record, double gamma,
                   std::uint64_t seed, const TreeParams& params) {
  Plan p = xtree_plan(train_tree(bellwether_data, params), record, gamma, seed);
  p.planner = "belltree";
  return p;
}

ValidationDecision validate(const BellwetherReport&, const KTestResult& outcome) {
  if (!outcome.aupec_reduced || !outcome.aupec_increased) return ValidationDecision::rediscover;
  return *outcome.aupec_reduced > *outcome.aupec_increased ? ValidationDecision::keep
                                                           : ValidationDecision::rediscover;
}

std::string_view to_string(ValidationDecision d) {
  return d == ValidationDecision::keep ? "keep" : "rediscover";
}

}  // namespace planwise
