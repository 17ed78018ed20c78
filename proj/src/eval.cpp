#include "planwise/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "planwise/stats.hpp"

namespace planwise {

double overlap(std::span<const Direction> developer, std::span<const Direction> planner) {
  if (developer.size() != planner.size() || developer.empty()) {
    throw std::invalid_argument("overlap: action vectors must share a non-empty metric universe");
  }
  std::size_t agree = 0;
  for (std::size_t i = 0; i < developer.size(); ++i) agree += developer[i] == planner[i] ? 1 : 0;
  return 100.0 * static_cast<double>(agree) / static_cast<double>(developer.size());
}

int changes_count(const Plan& plan) {
  return static_cast<int>(std::count_if(plan.actions.begin(), plan.actions.end(),
                                        [](const Action& a) { return a.direction != Direction::keep; }));
}

int overlap_bucket(double overlap_percent) {
  const int b = static_cast<int>(std::floor(overlap_percent / kBucketWidth));
  return std::clamp(b, 0, kBucketCount - 1);
}

ChangeSummary summarize_changes(std::span<const Plan> plans) {
  ChangeSummary s;
  s.plans = plans.size();
  if (plans.empty()) return s;
  std::vector<double> counts;
  counts.reserve(plans.size());
  for (const auto& p : plans) counts.push_back(changes_count(p));
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  s.min = static_cast<int>(*lo);
  s.max = static_cast<int>(*hi);
  s.mean = std::accumulate(counts.begin(), counts.end(), 0.0) / static_cast<double>(counts.size());
  s.median = stats::median(counts);
  return s;
}

std::optional<double> aupec(std::span<const CurvePoint> curve, bool reduced, long best) {
  if (curve.size() < 2) return std::nullopt;
  std::vector<double> xs, ys;
  for (const auto& p : curve) {
    xs.push_back(p.overlap);
    ys.push_back(static_cast<double>(reduced ? p.reduced : p.increased));
  }
  if (best <= 0) return 0.0;
  const double area = stats::simpson_integrate(xs, ys);
  const double span = xs.back() - xs.front();
  return 100.0 * area / (static_cast<double>(best) * span);
}

KTestResult score_plans(std::span<const Plan> plans, const VersionedDataset& planned,
                        const VersionedDataset& validation, double epsilon) {
  std::unordered_map<std::string, const ClassRecord*> before, after;
  for (const auto& r : planned.records) before.emplace(r.name, &r);
  for (const auto& r : validation.records) after.emplace(r.name, &r);

  KTestResult result;
  result.project = planned.project;
  result.plan_version = planned.version;
  result.validate_version = validation.version;
  if (!plans.empty()) result.planner = plans.front().planner;
  result.curve.resize(kBucketCount);
  for (int b = 0; b < kBucketCount; ++b) {
    result.curve[static_cast<std::size_t>(b)].overlap = kBucketWidth * (b + 0.5);
  }

  for (const auto& plan : plans) {
    auto bj = before.find(plan.class_name);
    auto bk = after.find(plan.class_name);
    if (bj == before.end() || bk == after.end()) continue;
    const ClassRecord& old_rec = *bj->second;
    const ClassRecord& new_rec = *bk->second;
    ActionVector developer;
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      developer[m] = diff_metric(old_rec.metrics[m], new_rec.metrics[m], epsilon);
    }
    const ActionVector proposed = plan.directions();
    auto& point = result.curve[static_cast<std::size_t>(overlap_bucket(overlap(developer, proposed)))];
    const long delta = static_cast<long>(old_rec.defects) - new_rec.defects;
    point.reduced += std::max(0L, delta);
    point.increased += std::max(0L, -delta);
    ++point.classes;
    ++result.matched_classes;
    result.matched_defects_before += old_rec.defects;
    result.matched_defects_after += new_rec.defects;
  }

  if (result.matched_classes > 0) {
    result.aupec_reduced = aupec(result.curve, true, result.matched_defects_before);
    result.aupec_increased = aupec(result.curve, false, result.matched_defects_after);
  }
  result.changes = summarize_changes(plans);
  return result;
}

KTestResult ktest(const Project& project, std::size_t i, std::size_t j, std::size_t k,
                  const PlannerFactory& factory, double epsilon) {
  if (!(i < j && j < k && k < project.versions.size())) {
    throw std::invalid_argument("ktest: need train < plan < validate release indices");
  }
  const auto& train = project.versions[i];
  const auto& planned = project.versions[j];
  const auto& validation = project.versions[k];
  const auto planner = factory(train);
  std::vector<Plan> plans;
  plans.reserve(planned.records.size());
  for (const auto& r : planned.records) plans.push_back(planner->plan(r));

  KTestResult result = score_plans(plans, planned, validation, epsilon);
  result.project = project.name;
  result.train_version = train.version;
  result.planner = std::string(planner->name());
  return result;
}

std::vector<KTestResult> ktest_windows(const Project& project, const PlannerFactory& factory, double epsilon) {
  if (project.versions.size() < 3) {
    throw std::invalid_argument("project '" + project.name + "' has " + std::to_string(project.versions.size()) +
                                " version(s); the K-test needs three releases (train, plan, validate)");
  }
  std::vector<KTestResult> out;
  for (std::size_t i = 0; i + 2 < project.versions.size(); ++i) {
    out.push_back(ktest(project, i, i + 1, i + 2, factory, epsilon));
  }
  return out;
}

}  // namespace planwise
