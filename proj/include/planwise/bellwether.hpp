#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "planwise/data_model.hpp"
#include "planwise/dtree.hpp"
#include "planwise/eval.hpp"
#include "planwise/planners.hpp"

namespace planwise {

struct Confusion {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
};

// Returns std::nullopt when the score is undefined (e.g. single-label truth).
using QualityMeasure = std::function<std::optional<double>(const Confusion&)>;

// Harmonic mean of recall and 1 - false alarm rate.
std::optional<double> g_score(const Confusion& c);
std::optional<double> f1_score(const Confusion& c);
QualityMeasure quality_measure(std::string_view name);

struct BellwetherReport {
  std::vector<std::string> projects;
  std::string quality_measure;
  // scores[source][target]; diagonal and undefined cells are empty.
  std::vector<std::vector<std::optional<double>>> scores;
  std::vector<std::optional<double>> per_source_median;
  std::string bellwether;
};

// Round-robin: a tree trained on each project's pooled releases predicts every
// other project's pooled releases. The project with the highest median score
// is the bellwether; ties go to the lexicographically smaller name.
BellwetherReport discover(const Community& community, std::string_view quality = "g",
                          const TreeParams& params = {});

// XTREE with the tree learned from the bellwether's pooled data.
Plan belltree_plan(const VersionedDataset& bellwether_data, const ClassRecord& record,
                   double gamma = 0.5, std::uint64_t seed = kDefaultSeed,
                   const TreeParams& params = {});

enum class ValidationDecision { keep, rediscover };

ValidationDecision validate(const BellwetherReport& report, const KTestResult& outcome);

std::string_view to_string(ValidationDecision d);

}  // namespace planwise
