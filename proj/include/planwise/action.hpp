#pragma once

#include <span>
#include <string>

#include "planwise/metrics.hpp"

namespace planwise {

// Direction of change for one metric: '+' increase, '-' decrease, '.' keep.
enum class Direction : char { increase = '+', decrease = '-', keep = '.' };

using ActionVector = PerMetric<Direction>;

constexpr char to_char(Direction d) { return static_cast<char>(d); }
Direction direction_from_char(char c);

ActionVector no_change();

// Compact one-character-per-metric row, e.g. "...+.+++.".
std::string compact_row(std::span<const Direction> actions);

}  // namespace planwise
