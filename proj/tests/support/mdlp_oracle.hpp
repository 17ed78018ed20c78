#pragma once

// Exhaustive Fayyad-Irani MDL reference: every candidate cut is evaluated from
// scratch on the raw samples. Shares no code with the library implementation.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace planwise::testing {

inline double oracle_entropy(const std::vector<std::pair<double, int>>& s) {
  std::map<int, std::size_t> counts;
  for (const auto& [v, l] : s) ++counts[l];
  std::vector<std::size_t> ordered;
  int max_label = counts.empty() ? 0 : counts.rbegin()->first;
  for (int l = 0; l <= max_label; ++l) ordered.push_back(counts.count(l) ? counts[l] : 0);
  double h = 0.0;
  for (auto c : ordered) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(s.size());
    h -= p * std::log2(p);
  }
  return h;
}

inline std::size_t oracle_classes(const std::vector<std::pair<double, int>>& s) {
  std::set<int> labels;
  for (const auto& [v, l] : s) labels.insert(l);
  return labels.size();
}

inline void oracle_split(std::vector<std::pair<double, int>> s, std::vector<double>& cuts) {
  const std::size_t n = s.size();
  if (n < 2 || oracle_classes(s) < 2) return;
  std::set<double> distinct;
  for (const auto& [v, l] : s) distinct.insert(v);
  std::vector<double> values(distinct.begin(), distinct.end());

  double best_e = INFINITY;
  double best_cut = 0.0;
  bool found = false;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    // boundary: the two adjacent value groups do not share one single label
    std::set<int> labels;
    for (const auto& [v, l] : s)
      if (v == values[i] || v == values[i + 1]) labels.insert(l);
    if (labels.size() < 2) continue;
    const double cut = (values[i] + values[i + 1]) / 2.0;
    std::vector<std::pair<double, int>> left, right;
    std::vector<std::pair<double, int>> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& e : sorted) (e.first <= values[i] ? left : right).push_back(e);
    const double e = (static_cast<double>(left.size()) * oracle_entropy(left) +
                      static_cast<double>(right.size()) * oracle_entropy(right)) /
                     static_cast<double>(n);
    if (e < best_e) {
      best_e = e;
      best_cut = cut;
      found = true;
    }
  }
  if (!found) return;

  std::vector<std::pair<double, int>> left, right;
  for (const auto& e : s) (e.first <= best_cut ? left : right).push_back(e);
  const double whole = oracle_entropy(s);
  const double k = static_cast<double>(oracle_classes(s));
  const double k1 = static_cast<double>(oracle_classes(left));
  const double k2 = static_cast<double>(oracle_classes(right));
  const double gain = whole - best_e;
  const double delta = std::log2(std::pow(3.0, k) - 2.0) -
                       (k * whole - k1 * oracle_entropy(left) - k2 * oracle_entropy(right));
  const double dn = static_cast<double>(n);
  if (!(gain > (std::log2(dn - 1.0) + delta) / dn)) return;
  cuts.push_back(best_cut);
  oracle_split(left, cuts);
  oracle_split(right, cuts);
}

inline std::vector<double> oracle_mdlp(const std::vector<double>& values, const std::vector<int>& labels) {
  std::vector<std::pair<double, int>> s;
  for (std::size_t i = 0; i < values.size(); ++i) s.emplace_back(values[i], labels[i]);
  std::vector<double> cuts;
  oracle_split(s, cuts);
  std::sort(cuts.begin(), cuts.end());
  return cuts;
}

}  // namespace planwise::testing
