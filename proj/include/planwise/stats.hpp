#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace planwise::stats {

struct LogisticFit {
  double alpha = 0.0;
  double beta = 0.0;
  double beta_se = 0.0;
  double p_value = 1.0;  // Wald test of beta = 0
  bool converged = false;
  int iterations = 0;
};

inline constexpr int kLogisticMaxIterations = 50;
inline constexpr double kLogisticTolerance = 1e-8;

// Maximum-likelihood fit of P(y=1) = 1 / (1 + exp(-(alpha + beta*x))) by
// iteratively reweighted least squares. Separated, constant, or single-class
// inputs come back with converged == false.
LogisticFit fit_univariate_logistic(std::span<const double> x, std::span<const int> y);

// Shannon entropy in bits of a class histogram.
double entropy_from_counts(std::span<const std::size_t> counts);

template <class Label>
double entropy(std::span<const Label> labels) {
  if (labels.empty()) throw std::invalid_argument("entropy of an empty multiset");
  std::map<Label, std::size_t> histogram;
  for (const auto& l : labels) ++histogram[l];
  std::vector<std::size_t> counts;
  counts.reserve(histogram.size());
  for (const auto& [_, c] : histogram) counts.push_back(c);
  return entropy_from_counts(counts);
}

// Composite Simpson's rule over tabulated samples. Consecutive panels of equal
// width are paired for Simpson; a leftover panel (odd panel count, or a width
// change) is integrated with the trapezoid rule. Fewer than three points fall
// back to the trapezoid rule. Throws std::invalid_argument unless xs is
// strictly increasing.
double simpson_integrate(std::span<const double> xs, std::span<const double> ys);

double median(std::span<const double> values);

}  // namespace planwise::stats
