#include "planwise/action.hpp"
#include "planwise/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace planwise {

std::optional<Metric> metric_from_name(std::string_view name) {
  std::string key;
  key.reserve(name.size());
  for (char c : name) {
    if (c == ' ' || c == '-') c = '_';
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  for (std::size_t i = 0; i < kMetricCount; ++i) {
    if (kMetricNames[i] == key) return static_cast<Metric>(i);
  }
  return std::nullopt;
}

Direction direction_from_char(char c) {
  switch (c) {
    case '+': return Direction::increase;
    case '-': return Direction::decrease;
    case '.': return Direction::keep;
  }
  throw std::invalid_argument(std::string("not an action character: '") + c + "'");
}

ActionVector no_change() {
  ActionVector v;
  v.fill(Direction::keep);
  return v;
}

std::string compact_row(std::span<const Direction> actions) {
  std::string out;
  out.reserve(actions.size());
  for (Direction d : actions) out.push_back(to_char(d));
  return out;
}

}  // namespace planwise
