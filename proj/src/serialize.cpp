#include "planwise/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace planwise {

using nlohmann::ordered_json;

namespace {

ordered_json number_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json number_or_null(const std::optional<double>& v) {
  return v ? number_or_null(*v) : ordered_json(nullptr);
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

ordered_json to_json(const TreeNode& node) {
  ordered_json j;
  j["depth"] = node.depth;
  j["support"] = node.support;
  j["defective"] = node.defective;
  j["defects"] = node.defects;
  j["score"] = node.score;
  j["split"] = node.split ? ordered_json(std::string(name_of(*node.split))) : ordered_json(nullptr);
  auto children = ordered_json::array();
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    ordered_json c;
    c["low"] = number_or_null(node.child_ranges[i].low);
    c["high"] = number_or_null(node.child_ranges[i].high);
    c["node"] = to_json(node.children[i]);
    children.push_back(std::move(c));
  }
  j["children"] = std::move(children);
  return j;
}

ordered_json to_json(const DecisionTree& tree) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["max_depth"] = tree.max_depth;
  j["min_leaf"] = tree.min_leaf;
  ordered_json bins;
  for (Metric m : kAllMetrics) bins[std::string(name_of(m))] = tree.bins[index_of(m)].cuts;
  j["bins"] = std::move(bins);
  j["root"] = to_json(tree.root);
  return j;
}

ordered_json to_json(const Plan& plan, bool with_refactorings) {
  ordered_json j;
  j["class"] = plan.class_name;
  j["planner"] = plan.planner;
  j["row"] = compact_row(plan.directions());
  j["changes"] = std::count_if(plan.actions.begin(), plan.actions.end(),
                               [](const Action& a) { return a.direction != Direction::keep; });
  j["expected_score_drop"] = plan.expected_score_drop;
  ordered_json actions;
  for (Metric m : kAllMetrics) {
    const Action& a = plan.actions[index_of(m)];
    ordered_json entry;
    entry["action"] = std::string(1, to_char(a.direction));
    if (a.target) entry["target_range"] = {a.target->low, a.target->high};
    if (a.suggested) entry["suggested"] = *a.suggested;
    actions[std::string(name_of(m))] = std::move(entry);
  }
  j["actions"] = std::move(actions);
  if (with_refactorings) {
    auto refs = ordered_json::array();
    for (const auto& r : suggest_refactorings(plan)) {
      refs.push_back({{"name", r.name}, {"matches", r.matches}});
    }
    j["refactorings"] = std::move(refs);
  }
  return j;
}

ordered_json to_json(const ThresholdRule& rule) {
  ordered_json j;
  j["metric"] = std::string(name_of(rule.metric));
  j["upper"] = rule.upper;
  j["p"] = rule.p_fraction ? ordered_json(*rule.p_fraction) : ordered_json(nullptr);
  return j;
}

ordered_json to_json(const BellwetherReport& report) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["quality_measure"] = report.quality_measure;
  j["projects"] = report.projects;
  j["bellwether"] = report.bellwether;
  ordered_json medians;
  ordered_json scores;
  for (std::size_t s = 0; s < report.projects.size(); ++s) {
    medians[report.projects[s]] = number_or_null(report.per_source_median[s]);
    ordered_json row;
    for (std::size_t t = 0; t < report.projects.size(); ++t) {
      if (s != t) row[report.projects[t]] = number_or_null(report.scores[s][t]);
    }
    scores[report.projects[s]] = std::move(row);
  }
  j["per_source_median"] = std::move(medians);
  j["scores"] = std::move(scores);
  return j;
}

ordered_json to_json(const KTestResult& r) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["project"] = r.project;
  j["planner"] = r.planner;
  j["train"] = r.train_version;
  j["plan"] = r.plan_version;
  j["validate"] = r.validate_version;
  j["matched_classes"] = r.matched_classes;
  j["matched_defects_before"] = r.matched_defects_before;
  j["matched_defects_after"] = r.matched_defects_after;
  j["aupec_reduced"] = number_or_null(r.aupec_reduced);
  j["aupec_increased"] = number_or_null(r.aupec_increased);
  j["changes_per_plan"] = {{"plans", r.changes.plans}, {"min", r.changes.min}, {"median", r.changes.median},
                           {"mean", r.changes.mean},   {"max", r.changes.max}};
  auto curve = ordered_json::array();
  for (const auto& p : r.curve) {
    curve.push_back({{"overlap", p.overlap}, {"reduced", p.reduced}, {"increased", p.increased},
                     {"classes", p.classes}});
  }
  j["curve"] = std::move(curve);
  return j;
}

std::string curve_csv(std::span<const CurvePoint> curve) {
  std::string out = "bucket,reduced,increased,classes\n";
  for (const auto& p : curve) {
    out += format_number(p.overlap) + ',' + std::to_string(p.reduced) + ',' + std::to_string(p.increased) + ',' +
           std::to_string(p.classes) + '\n';
  }
  return out;
}

std::string plans_compact(std::span<const Plan> plans) {
  std::string out = "class";
  for (auto n : kMetricNames) {
    out += ',';
    out += n;
  }
  out += '\n';
  for (const auto& p : plans) {
    out += p.class_name;
    for (const auto& a : p.actions) {
      out += ',';
      out += to_char(a.direction);
    }
    out += '\n';
  }
  return out;
}

}  // namespace planwise
