#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace planwise {

// The 20 static code metrics of a class, in canonical order. Every array
// indexed by metric (values, plans, bins) uses this order.
enum class Metric : std::size_t {
  wmc, dit, noc, cbo, rfc, lcom, ca, ce, npm, lcom3,
  loc, dam, moa, mfa, cam, ic, cbm, amc, max_cc, avg_cc,
};

inline constexpr std::size_t kMetricCount = 20;

inline constexpr std::array<std::string_view, kMetricCount> kMetricNames = {
    "wmc", "dit", "noc", "cbo", "rfc", "lcom", "ca", "ce", "npm", "lcom3",
    "loc", "dam", "moa", "mfa", "cam", "ic", "cbm", "amc", "max_cc", "avg_cc",
};

inline constexpr std::array<Metric, kMetricCount> kAllMetrics = [] {
  std::array<Metric, kMetricCount> out{};
  for (std::size_t i = 0; i < kMetricCount; ++i) out[i] = static_cast<Metric>(i);
  return out;
}();

constexpr std::size_t index_of(Metric m) { return static_cast<std::size_t>(m); }
constexpr std::string_view name_of(Metric m) { return kMetricNames[index_of(m)]; }

// Case-insensitive lookup; also accepts "max cc" / "avg cc" spellings.
std::optional<Metric> metric_from_name(std::string_view name);

template <class T>
using PerMetric = std::array<T, kMetricCount>;

}  // namespace planwise
