#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "planwise/action.hpp"
#include "planwise/data_model.hpp"
#include "planwise/planners.hpp"

namespace planwise {

// Percentage of positions where the two action vectors agree, keep == keep
// included. The denominator is the full metric universe.
double overlap(std::span<const Direction> developer, std::span<const Direction> planner);

int changes_count(const Plan& plan);

inline constexpr int kBucketCount = 10;
inline constexpr double kBucketWidth = 100.0 / kBucketCount;

// Decile index of an overlap percentage; 100 lands in the last decile.
int overlap_bucket(double overlap_percent);

struct CurvePoint {
  double overlap = 0.0;  // bucket midpoint
  long reduced = 0;
  long increased = 0;
  std::size_t classes = 0;
};

struct ChangeSummary {
  std::size_t plans = 0;
  int min = 0;
  double median = 0.0;
  double mean = 0.0;
  int max = 0;
};

struct KTestResult {
  std::string project;
  std::string train_version;
  std::string plan_version;
  std::string validate_version;
  std::string planner;
  std::vector<CurvePoint> curve;
  std::size_t matched_classes = 0;
  long matched_defects_before = 0;  // sum over matched classes in the planned release
  long matched_defects_after = 0;   // same classes in the validation release
  std::optional<double> aupec_reduced;
  std::optional<double> aupec_increased;
  ChangeSummary changes;
};

using PlannerFactory = std::function<std::unique_ptr<Planner>(const VersionedDataset& train)>;

// Scores plans for release `planned` against what happened in `validation`.
// Plans are matched to classes by name; unplanned classes are skipped.
KTestResult score_plans(std::span<const Plan> plans, const VersionedDataset& planned,
                        const VersionedDataset& validation, double epsilon = 0.0);

// Area under a curve as a percentage of `best` over the curve's span.
std::optional<double> aupec(std::span<const CurvePoint> curve, bool reduced, long best);

// Train on versions[i], plan for versions[j], validate on versions[k].
KTestResult ktest(const Project& project, std::size_t i, std::size_t j, std::size_t k,
                  const PlannerFactory& factory, double epsilon = 0.0);

// Every consecutive (i, i+1, i+2) window. Throws std::invalid_argument for
// fewer than three versions.
std::vector<KTestResult> ktest_windows(const Project& project, const PlannerFactory& factory,
                                       double epsilon = 0.0);

ChangeSummary summarize_changes(std::span<const Plan> plans);

}  // namespace planwise
