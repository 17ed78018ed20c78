#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "planwise/action.hpp"
#include "planwise/data_model.hpp"
#include "planwise/dtree.hpp"
#include "planwise/refhints.hpp"

namespace planwise {

struct TargetRange {
  double low = 0.0;
  double high = 0.0;
};

struct Action {
  Direction direction = Direction::keep;
  std::optional<TargetRange> target;
  std::optional<double> suggested;  // XTREE only: sampled point inside target
};

struct Plan {
  std::string class_name;
  PerMetric<Action> actions{};
  std::string planner;
  double expected_score_drop = 0.0;

  ActionVector directions() const;
};

struct ThresholdRule {
  Metric metric = Metric::wmc;
  double upper = 0.0;
  std::optional<double> p_fraction;  // relative thresholds only
};

inline constexpr std::uint64_t kDefaultSeed = 20180801;

// ---- XTREE ---------------------------------------------------------------

// Walks up from the record's leaf looking for the nearest leaf whose score is
// below gamma times the current score, then moves each contrasting metric
// toward that leaf's range. Returns an all-keep plan when no such leaf exists.
Plan xtree_plan(const DecisionTree& tree, const ClassRecord& record, double gamma = 0.5,
                std::uint64_t seed = kDefaultSeed);

// Number of conditions present in exactly one of the two branches.
std::size_t branch_distance(const Branch& a, const Branch& b);

// ---- threshold baselines ----------------------------------------------------

std::vector<ThresholdRule> alves_thresholds(const VersionedDataset& train, double percentile = 70.0);
// LOC-weighted percentile of one metric column; no significance filter.
double alves_threshold(std::span<const double> values, std::span<const double> loc,
                       double percentile);

std::vector<ThresholdRule> shatnawi_thresholds(const VersionedDataset& train, double p0 = 0.05,
                                               double p1 = 0.05);
// (1/beta) * (ln(p1/(1-p1)) - alpha)
double varl(double alpha, double beta, double p1);

struct RelativeThreshold {
  int p = 0;  // percent of entities
  double k = 0.0;
  double penalty = 0.0;
};

// Percentage of systems in which at least p% of entities have value <= k.
double compliance_rate(std::span<const std::vector<double>> systems, int p, double k);
// Median of the values at or above the tail-th percentile of the pooled data.
double tail_median(std::span<const std::vector<double>> systems, double tail);
RelativeThreshold oliveira_select(std::span<const std::vector<double>> systems,
                                  double min_compliance = 90.0, double tail = 90.0);
std::vector<ThresholdRule> oliveira_thresholds(const VersionedDataset& train,
                                               double min_compliance = 90.0, double tail = 90.0);

Plan threshold_plan(std::span<const ThresholdRule> rules, const ClassRecord& record,
                    std::string planner = "threshold");

// True when the metric passes the univariate logistic screen (p <= 0.05).
bool passes_logistic_filter(const VersionedDataset& train, Metric metric);

// ---- refactoring hints -----------------------------------------------------

struct RefactoringMatch {
  std::string name;
  int matches = 0;
  int unmatched = 0;  // non-blank signature cells the plan does not match
};

std::vector<RefactoringMatch> suggest_refactorings(
    const std::array<Direction, refhints::kColumnCount>& actions);
std::vector<RefactoringMatch> suggest_refactorings(const Plan& plan);

// ---- common interface ------------------------------------------------------

enum class PlannerKind { xtree, belltree, alves, shatnawi, oliveira };

std::string_view planner_name(PlannerKind kind);
std::optional<PlannerKind> planner_from_name(std::string_view name);
inline constexpr std::array<PlannerKind, 5> kAllPlanners = {
    PlannerKind::xtree, PlannerKind::belltree, PlannerKind::alves, PlannerKind::shatnawi,
    PlannerKind::oliveira};

struct PlannerParams {
  double gamma = 0.5;
  double percentile = 70.0;
  double p0 = 0.05;
  double p1 = 0.05;
  double min_compliance = 90.0;
  double tail = 90.0;
  TreeParams tree;
  std::uint64_t seed = kDefaultSeed;
};

class Planner {
 public:
  virtual ~Planner() = default;
  virtual std::string_view name() const = 0;
  virtual Plan plan(const ClassRecord& record) const = 0;
};

class TreePlanner final : public Planner {
 public:
  TreePlanner(DecisionTree tree, std::string name, double gamma, std::uint64_t seed);
  std::string_view name() const override { return name_; }
  Plan plan(const ClassRecord& record) const override;
  const DecisionTree& tree() const { return tree_; }

 private:
  DecisionTree tree_;
  std::string name_;
  double gamma_;
  std::uint64_t seed_;
};

class ThresholdPlanner final : public Planner {
 public:
  ThresholdPlanner(std::vector<ThresholdRule> rules, std::string name);
  std::string_view name() const override { return name_; }
  Plan plan(const ClassRecord& record) const override;
  const std::vector<ThresholdRule>& rules() const { return rules_; }

 private:
  std::vector<ThresholdRule> rules_;
  std::string name_;
};

// Trains the requested planner on `train`. For belltree the caller passes the
// pooled bellwether data as `train`.
std::unique_ptr<Planner> make_planner(PlannerKind kind, const VersionedDataset& train,
                                      const PlannerParams& params = {});

std::vector<ThresholdRule> derive_thresholds(PlannerKind kind, const VersionedDataset& train,
                                             const PlannerParams& params = {});

}  // namespace planwise
