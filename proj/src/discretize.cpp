#include "planwise/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "planwise/stats.hpp"

namespace planwise {
namespace {

struct Sample {
  double value;
  int label;
};

class MdlpSplitter {
 public:
  MdlpSplitter(std::vector<Sample> samples, std::size_t classes)
      : samples_(std::move(samples)), classes_(classes) {}

  std::vector<double> run() {
    split(0, samples_.size());
    std::sort(cuts_.begin(), cuts_.end());
    return cuts_;
  }

 private:
  std::vector<std::size_t> histogram(std::size_t lo, std::size_t hi) const {
    std::vector<std::size_t> counts(classes_, 0);
    for (std::size_t i = lo; i < hi; ++i) ++counts[samples_[i].label];
    return counts;
  }

  static std::size_t distinct(const std::vector<std::size_t>& counts) {
    return static_cast<std::size_t>(std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }));
  }

  // Labels present among the samples sharing value samples_[at].value.
  std::vector<bool> labels_at_value(std::size_t at, std::size_t lo, std::size_t hi) const {
    std::vector<bool> seen(classes_, false);
    const double v = samples_[at].value;
    std::size_t i = at;
    while (i > lo && samples_[i - 1].value == v) --i;
    for (; i < hi && samples_[i].value == v; ++i) seen[samples_[i].label] = true;
    return seen;
  }

  bool is_boundary(std::size_t i, std::size_t lo, std::size_t hi) const {
    auto left = labels_at_value(i - 1, lo, hi);
    auto right = labels_at_value(i, lo, hi);
    std::size_t kinds = 0;
    for (std::size_t c = 0; c < classes_; ++c) kinds += (left[c] || right[c]) ? 1 : 0;
    return kinds > 1;
  }

  void split(std::size_t lo, std::size_t hi) {
    const std::size_t n = hi - lo;
    if (n < 2) return;
    const auto total = histogram(lo, hi);
    const std::size_t k = distinct(total);
    if (k < 2) return;
    const double whole = stats::entropy_from_counts(total);

    std::vector<std::size_t> left(classes_, 0);
    std::vector<std::size_t> right = total;
    double best = INFINITY;
    std::size_t best_at = 0;
    std::vector<std::size_t> best_left, best_right;
    for (std::size_t i = lo + 1; i < hi; ++i) {
      ++left[samples_[i - 1].label];
      --right[samples_[i - 1].label];
      if (samples_[i - 1].value == samples_[i].value) continue;
      if (!is_boundary(i, lo, hi)) continue;
      const double nl = static_cast<double>(i - lo);
      const double nr = static_cast<double>(hi - i);
      const double e = (nl * stats::entropy_from_counts(left) + nr * stats::entropy_from_counts(right)) /
                       static_cast<double>(n);
      if (e < best) {
        best = e;
        best_at = i;
        best_left = left;
        best_right = right;
      }
    }
    if (best_at == 0) return;

    const double dn = static_cast<double>(n);
    const double gain = whole - best;
    const double k1 = static_cast<double>(distinct(best_left));
    const double k2 = static_cast<double>(distinct(best_right));
    const double delta = std::log2(std::pow(3.0, static_cast<double>(k)) - 2.0) -
                         (static_cast<double>(k) * whole - k1 * stats::entropy_from_counts(best_left) -
                          k2 * stats::entropy_from_counts(best_right));
    const double threshold = (std::log2(dn - 1.0) + delta) / dn;
    if (!(gain > threshold)) return;

    cuts_.push_back((samples_[best_at - 1].value + samples_[best_at].value) / 2.0);
    split(lo, best_at);
    split(best_at, hi);
  }

  std::vector<Sample> samples_;
  std::size_t classes_;
  std::vector<double> cuts_;
};

}  // namespace

std::vector<double> mdlp_cuts(std::span<const double> values, std::span<const int> labels) {
  if (values.size() != labels.size()) throw std::invalid_argument("mdlp: values and labels differ in length");
  std::vector<Sample> samples;
  samples.reserve(values.size());
  int max_label = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (labels[i] < 0) throw std::invalid_argument("mdlp: labels must be non-negative");
    if (!std::isfinite(values[i])) throw std::invalid_argument("mdlp: values must be finite");
    samples.push_back({values[i], labels[i]});
    max_label = std::max(max_label, labels[i]);
  }
  std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) {
    return a.value < b.value || (a.value == b.value && a.label < b.label);
  });
  return MdlpSplitter(std::move(samples), static_cast<std::size_t>(max_label) + 1).run();
}

std::size_t apply_bins(const BinMap& bins, double value) {
  return static_cast<std::size_t>(std::lower_bound(bins.cuts.begin(), bins.cuts.end(), value) -
                                  bins.cuts.begin());
}

BinSet discretize(const VersionedDataset& data) {
  std::vector<int> labels;
  labels.reserve(data.records.size());
  for (const auto& r : data.records) labels.push_back(r.defective() ? 1 : 0);
  BinSet bins;
  std::vector<double> column(data.records.size());
  for (Metric m : kAllMetrics) {
    for (std::size_t i = 0; i < data.records.size(); ++i) column[i] = data.records[i][m];
    bins[index_of(m)] = BinMap{m, mdlp_cuts(column, labels)};
  }
  return bins;
}

}  // namespace planwise
