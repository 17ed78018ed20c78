#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "planwise/data_model.hpp"
#include "planwise/metrics.hpp"

namespace planwise {

// Ranges of one metric: (-inf, c1], (c1, c2], ..., (ck, +inf).
struct BinMap {
  Metric metric = Metric::wmc;
  std::vector<double> cuts;

  std::size_t bin_count() const { return cuts.size() + 1; }
};

using BinSet = PerMetric<BinMap>;

// Fayyad-Irani entropy discretization with the MDL stopping criterion.
// Labels are small non-negative class ids. Returned cuts are sorted.
std::vector<double> mdlp_cuts(std::span<const double> values, std::span<const int> labels);

std::size_t apply_bins(const BinMap& bins, double value);

// Discretizes every metric of `data` against the defective (defects > 0) label.
BinSet discretize(const VersionedDataset& data);

}  // namespace planwise
