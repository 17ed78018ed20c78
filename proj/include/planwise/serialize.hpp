#pragma once

#include <span>
#include <string>

#include "json.hpp"

#include "planwise/bellwether.hpp"
#include "planwise/dtree.hpp"
#include "planwise/eval.hpp"
#include "planwise/planners.hpp"

namespace planwise {

inline constexpr int kSchemaVersion = 1;

nlohmann::ordered_json to_json(const TreeNode& node);
nlohmann::ordered_json to_json(const DecisionTree& tree);
nlohmann::ordered_json to_json(const Plan& plan, bool with_refactorings = true);
nlohmann::ordered_json to_json(const ThresholdRule& rule);
nlohmann::ordered_json to_json(const BellwetherReport& report);
nlohmann::ordered_json to_json(const KTestResult& result);

// bucket,reduced,increased,classes
std::string curve_csv(std::span<const CurvePoint> curve);

// One compact row per plan: class name then one '+', '-' or '.' per metric.
std::string plans_compact(std::span<const Plan> plans);

}  // namespace planwise
