#include "planwise/planners.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>

#include "planwise/stats.hpp"

namespace planwise {
namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Plan empty_plan(const ClassRecord& record, std::string planner) {
  Plan p;
  p.class_name = record.name;
  p.planner = std::move(planner);
  return p;
}

std::vector<double> column(const VersionedDataset& data, Metric m) {
  std::vector<double> out;
  out.reserve(data.records.size());
  for (const auto& r : data.records) out.push_back(r[m]);
  return out;
}

std::vector<int> defective_labels(const VersionedDataset& data) {
  std::vector<int> out;
  out.reserve(data.records.size());
  for (const auto& r : data.records) out.push_back(r.defective() ? 1 : 0);
  return out;
}

}  // namespace

ActionVector Plan::directions() const {
  ActionVector v;
  for (std::size_t m = 0; m < kMetricCount; ++m) v[m] = actions[m].direction;
  return v;
}

// ---- XTREE -------------------------------------------------------------------

std::size_t branch_distance(const Branch& a, const Branch& b) {
  std::set<Condition> sa(a.conditions.begin(), a.conditions.end());
  std::set<Condition> sb(b.conditions.begin(), b.conditions.end());
  std::size_t shared = 0;
  for (const auto& c : sa) shared += sb.count(c);
  return sa.size() + sb.size() - 2 * shared;
}

Plan xtree_plan(const DecisionTree& tree, const ClassRecord& record, double gamma, std::uint64_t seed) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("xtree_plan: gamma must lie in (0, 1)");
  Plan plan = empty_plan(record, "xtree");
  const Branch current = locate(tree, record);
  if (!(current.score > 0.0)) return plan;

  std::optional<Branch> desired;
  for (int level = static_cast<int>(current.length()) - 1;; --level) {
    SiblingSet siblings = siblings_at(tree, current, level);
    if (siblings.exhausted) return plan;
    const Branch* best = nullptr;
    std::size_t best_distance = 0;
    for (const auto& s : siblings.leaves) {
      if (!(s.score < gamma * current.score)) continue;
      const std::size_t d = branch_distance(current, s);
      if (!best || std::tie(d, s.score, s.path) < std::tie(best_distance, best->score, best->path)) {
        best = &s;
        best_distance = d;
      }
    }
    if (best) {
      desired = *best;
      break;
    }
  }

  plan.expected_score_drop = current.score - desired->score;
  const std::set<Condition> held(current.conditions.begin(), current.conditions.end());
  std::mt19937_64 rng(seed ^ fnv1a(record.name));
  for (const Condition& c : desired->conditions) {
    if (held.count(c)) continue;
    const double value = record[c.metric];
    if (c.contains(value)) continue;
    const std::size_t m = index_of(c.metric);
    Action& a = plan.actions[m];
    a.direction = value > c.high ? Direction::decrease : Direction::increase;
    double low = std::isfinite(c.low) ? c.low : tree.observed_min[m];
    double high = std::isfinite(c.high) ? c.high : tree.observed_max[m];
    if (low > high) low = high;
    a.target = TargetRange{low, high};
    a.suggested = low == high ? low : std::uniform_real_distribution<double>(low, high)(rng);
  }
  return plan;
}

// ---- threshold baselines -------------------------------------------------------

bool passes_logistic_filter(const VersionedDataset& train, Metric metric) {
  const auto fit = stats::fit_univariate_logistic(column(train, metric), defective_labels(train));
  return fit.converged && fit.p_value <= 0.05;
}

double alves_threshold(std::span<const double> values, std::span<const double> loc, double percentile) {
  if (values.empty() || values.size() != loc.size()) throw std::invalid_argument("alves: bad input");
  if (!(percentile > 0.0 && percentile < 100.0)) throw std::invalid_argument("alves: percentile in (0,100)");
  std::vector<std::pair<double, double>> weighted;
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    weighted.emplace_back(values[i], loc[i]);
    total += loc[i];
  }
  if (!(total > 0.0)) {
    for (auto& w : weighted) w.second = 1.0;
    total = static_cast<double>(weighted.size());
  }
  std::sort(weighted.begin(), weighted.end());
  const double target = percentile / 100.0;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < weighted.size(); ++i) {
    cumulative += weighted[i].second / total;
    const bool last_of_value = i + 1 == weighted.size() || weighted[i + 1].first != weighted[i].first;
    if (last_of_value && cumulative >= target - 1e-12) return weighted[i].first;
  }
  return weighted.back().first;
}

std::vector<ThresholdRule> alves_thresholds(const VersionedDataset& train, double percentile) {
  const auto loc = column(train, Metric::loc);
  std::vector<ThresholdRule> rules;
  for (Metric m : kAllMetrics) {
    if (!passes_logistic_filter(train, m)) continue;
    rules.push_back({m, alves_threshold(column(train, m), loc, percentile), std::nullopt});
  }
  return rules;
}

double varl(double alpha, double beta, double p1) {
  return (std::log(p1 / (1.0 - p1)) - alpha) / beta;
}

std::vector<ThresholdRule> shatnawi_thresholds(const VersionedDataset& train, double p0, double p1) {
  if (!(p0 > 0 && p0 < 1 && p1 > 0 && p1 < 1)) throw std::invalid_argument("shatnawi: p0, p1 in (0,1)");
  const auto labels = defective_labels(train);
  std::vector<ThresholdRule> rules;
  for (Metric m : kAllMetrics) {
    const auto values = column(train, m);
    const auto fit = stats::fit_univariate_logistic(values, labels);
    if (!fit.converged || fit.p_value > 0.05 || fit.beta == 0.0) continue;
    const double t = varl(fit.alpha, fit.beta, p1);
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (!std::isfinite(t) || t <= 0.0 || t < *lo || t > *hi) continue;
    rules.push_back({m, t, std::nullopt});
  }
  return rules;
}

double compliance_rate(std::span<const std::vector<double>> systems, int p, double k) {
  if (systems.empty()) return 0.0;
  std::size_t passing = 0;
  for (const auto& s : systems) {
    if (s.empty()) continue;
    const auto below = static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [k](double v) { return v <= k; }));
    if (below * 100 >= static_cast<std::size_t>(p) * s.size()) ++passing;
  }
  return 100.0 * static_cast<double>(passing) / static_cast<double>(systems.size());
}

double tail_median(std::span<const std::vector<double>> systems, double tail) {
  std::vector<double> all;
  for (const auto& s : systems) all.insert(all.end(), s.begin(), s.end());
  if (all.empty()) throw std::invalid_argument("tail_median: no values");
  std::sort(all.begin(), all.end());
  auto start = static_cast<std::size_t>(std::floor(tail / 100.0 * static_cast<double>(all.size())));
  start = std::min(start, all.size() - 1);
  return stats::median(std::span<const double>(all).subspan(start));
}

RelativeThreshold oliveira_select(std::span<const std::vector<double>> systems, double min_compliance,
                                  double tail) {
  if (!(min_compliance > 0 && min_compliance < 100 && tail > 0 && tail < 100)) {
    throw std::invalid_argument("oliveira: min_compliance and tail in (0,100)");
  }
  const double ideal = tail_median(systems, tail);
  std::vector<std::vector<double>> sorted(systems.begin(), systems.end());
  std::set<double> candidates;
  for (auto& s : sorted) {
    std::sort(s.begin(), s.end());
    candidates.insert(s.begin(), s.end());
  }

  RelativeThreshold best{0, 0.0, INFINITY};
  for (double k : candidates) {
    std::vector<std::size_t> below(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      below[i] = static_cast<std::size_t>(std::upper_bound(sorted[i].begin(), sorted[i].end(), k) - sorted[i].begin());
    }
    const double penalty2 = ideal > 0 ? std::abs(k - ideal) / ideal : std::abs(k - ideal);
    for (int p = 99; p >= 1; --p) {
      std::size_t passing = 0;
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (!sorted[i].empty() && below[i] * 100 >= static_cast<std::size_t>(p) * sorted[i].size()) ++passing;
      }
      const double rate = 100.0 * static_cast<double>(passing) / static_cast<double>(sorted.size());
      const double penalty = std::max(0.0, min_compliance - rate) + penalty2;
      const bool better = penalty < best.penalty ||
                          (penalty == best.penalty && (p > best.p || (p == best.p && k < best.k)));
      if (better) best = {p, k, penalty};
    }
  }
  return best;
}

std::vector<ThresholdRule> oliveira_thresholds(const VersionedDataset& train, double min_compliance,
                                               double tail) {
  std::vector<ThresholdRule> rules;
  for (Metric m : kAllMetrics) {
    const std::vector<std::vector<double>> systems{column(train, m)};
    const auto choice = oliveira_select(systems, min_compliance, tail);
    rules.push_back({m, choice.k, choice.p / 100.0});
  }
  return rules;
}

Plan threshold_plan(std::span<const ThresholdRule> rules, const ClassRecord& record, std::string planner) {
  Plan plan = empty_plan(record, std::move(planner));
  for (const auto& rule : rules) {
    if (record[rule.metric] > rule.upper) {
      auto& a = plan.actions[index_of(rule.metric)];
      a.direction = Direction::decrease;
      a.target = TargetRange{0.0, rule.upper};
    }
  }
  return plan;
}

// ---- refactoring hints -----------------------------------------------------------

std::vector<RefactoringMatch> suggest_refactorings(const std::array<Direction, refhints::kColumnCount>& actions) {
  std::vector<RefactoringMatch> out;
  for (const auto& row : refhints::table()) {
    if (row.empty()) continue;
    RefactoringMatch match{std::string(row.name), 0, 0};
    for (std::size_t c = 0; c < refhints::kColumnCount; ++c) {
      const auto effect = row.effects[c];
      if (effect == refhints::Effect::blank) continue;
      const bool hit = (effect == refhints::Effect::up && actions[c] == Direction::increase) ||
                       (effect == refhints::Effect::down && actions[c] == Direction::decrease);
      if (hit) {
        ++match.matches;
      } else {
        ++match.unmatched;
      }
    }
    if (match.matches > 0) out.push_back(std::move(match));
  }
  std::stable_sort(out.begin(), out.end(), [](const RefactoringMatch& a, const RefactoringMatch& b) {
    if (a.matches != b.matches) return a.matches > b.matches;
    return a.unmatched < b.unmatched;
  });
  return out;
}

std::vector<RefactoringMatch> suggest_refactorings(const Plan& plan) {
  std::array<Direction, refhints::kColumnCount> projected{};
  for (std::size_t c = 0; c < refhints::kColumnCount; ++c) {
    projected[c] = plan.actions[index_of(refhints::kColumnSource[c])].direction;
  }
  return suggest_refactorings(projected);
}

// ---- common interface ------------------------------------------------------------

std::string_view planner_name(PlannerKind kind) {
  switch (kind) {
    case PlannerKind::xtree: return "xtree";
    case PlannerKind::belltree: return "belltree";
    case PlannerKind::alves: return "alves";
    case PlannerKind::shatnawi: return "shatnawi";
    case PlannerKind::oliveira: return "oliveira";
  }
  return "unknown";
}

std::optional<PlannerKind> planner_from_name(std::string_view name) {
  for (auto k : kAllPlanners)
    if (planner_name(k) == name) return k;
  return std::nullopt;
}

TreePlanner::TreePlanner(DecisionTree tree, std::string name, double gamma, std::uint64_t seed)
    : tree_(std::move(tree)), name_(std::move(name)), gamma_(gamma), seed_(seed) {}

Plan TreePlanner::plan(const ClassRecord& record) const {
  Plan p = xtree_plan(tree_, record, gamma_, seed_);
  p.planner = name_;
  return p;
}

ThresholdPlanner::ThresholdPlanner(std::vector<ThresholdRule> rules, std::string name)
    : rules_(std::move(rules)), name_(std::move(name)) {}

Plan ThresholdPlanner::plan(const ClassRecord& record) const { return threshold_plan(rules_, record, name_); }

std::vector<ThresholdRule> derive_thresholds(PlannerKind kind, const VersionedDataset& train,
                                             const PlannerParams& params) {
  switch (kind) {
    case PlannerKind::alves: return alves_thresholds(train, params.percentile);
    case PlannerKind::shatnawi: return shatnawi_thresholds(train, params.p0, params.p1);
    case PlannerKind::oliveira: return oliveira_thresholds(train, params.min_compliance, params.tail);
    default: throw std::invalid_argument("derive_thresholds: not a threshold planner");
  }
}

std::unique_ptr<Planner> make_planner(PlannerKind kind, const VersionedDataset& train, const PlannerParams& params) {
  switch (kind) {
    case PlannerKind::xtree:
    case PlannerKind::belltree:
      return std::make_unique<TreePlanner>(train_tree(train, params.tree), std::string(planner_name(kind)),
                                           params.gamma, params.seed);
    default:
      return std::make_unique<ThresholdPlanner>(derive_thresholds(kind, train, params),
                                                std::string(planner_name(kind)));
  }
}

}  // namespace planwise
