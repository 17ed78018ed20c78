#include "planwise/dtree.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "planwise/stats.hpp"

namespace planwise {
namespace {

struct Group {
  std::size_t first_bin = 0;
  std::size_t last_bin = 0;
  std::vector<std::size_t> rows;
  std::array<std::size_t, 2> labels{};
};

class TreeBuilder {
 public:
  TreeBuilder(const VersionedDataset& data, const BinSet& bins, int max_depth, int min_leaf)
      : data_(data), bins_(bins), max_depth_(max_depth), min_leaf_(static_cast<std::size_t>(min_leaf)) {}

  TreeNode build() {
    std::vector<std::size_t> rows(data_.records.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    PerMetric<bool> used{};
    return grow(rows, 0, used);
  }

 private:
  // Contiguous runs of populated bins, each holding at least min_leaf rows.
  std::vector<Group> partition(const std::vector<std::size_t>& rows, Metric m) const {
    const BinMap& bins = bins_[index_of(m)];
    std::vector<std::vector<std::size_t>> per_bin(bins.bin_count());
    for (auto r : rows) per_bin[apply_bins(bins, data_.records[r][m])].push_back(r);

    std::vector<Group> groups;
    Group current;
    bool open = false;
    for (std::size_t b = 0; b < per_bin.size(); ++b) {
      if (per_bin[b].empty()) continue;
      if (!open) {
        current = Group{};
        current.first_bin = b;
        open = true;
      }
      current.rows.insert(current.rows.end(), per_bin[b].begin(), per_bin[b].end());
      current.last_bin = b;
      if (current.rows.size() >= min_leaf_) {
        groups.push_back(std::move(current));
        open = false;
      }
    }
    if (open) {
      if (groups.empty()) {
        groups.push_back(std::move(current));
      } else {
        auto& prev = groups.back();
        prev.rows.insert(prev.rows.end(), current.rows.begin(), current.rows.end());
        prev.last_bin = current.last_bin;
      }
    }
    for (auto& g : groups) {
      for (auto r : g.rows) ++g.labels[data_.records[r].defective() ? 1 : 0];
    }
    // Widen the groups so together they cover every bin.
    if (!groups.empty()) {
      groups.front().first_bin = 0;
      for (std::size_t i = 1; i < groups.size(); ++i) groups[i - 1].last_bin = groups[i].first_bin - 1;
      groups.back().last_bin = bins.bin_count() - 1;
    }
    return groups;
  }

  TreeNode grow(const std::vector<std::size_t>& rows, int depth, PerMetric<bool> used) {
    TreeNode node;
    node.depth = depth;
    node.support = rows.size();
    for (auto r : rows) {
      node.defects += data_.records[r].defects;
      if (data_.records[r].defective()) ++node.defective;
    }
    node.score = node.support ? static_cast<double>(node.defects) / static_cast<double>(node.support) : 0.0;

    if (depth >= max_depth_ || node.support < 2 * min_leaf_) return node;
    if (node.defective == 0 || node.defective == node.support) return node;

    const std::array<std::size_t, 2> parent_counts{node.support - node.defective, node.defective};
    const double parent_entropy = stats::entropy_from_counts(parent_counts);

    double best_gain = 1e-12;
    std::optional<Metric> best_metric;
    std::vector<Group> best_groups;
    for (Metric m : kAllMetrics) {
      if (used[index_of(m)]) continue;
      auto groups = partition(rows, m);
      if (groups.size() < 2) continue;
      double remainder = 0.0;
      for (const auto& g : groups) {
        remainder += static_cast<double>(g.rows.size()) * stats::entropy_from_counts(g.labels);
      }
      const double gain = parent_entropy - remainder / static_cast<double>(node.support);
      if (gain > best_gain) {
        best_gain = gain;
        best_metric = m;
        best_groups = std::move(groups);
      }
    }
    if (!best_metric) return node;

    node.split = best_metric;
    used[index_of(*best_metric)] = true;
    const BinMap& bins = bins_[index_of(*best_metric)];
    for (const auto& g : best_groups) {
      Condition c;
      c.metric = *best_metric;
      c.low = g.first_bin == 0 ? -kInf : bins.cuts[g.first_bin - 1];
      c.high = g.last_bin + 1 == bins.bin_count() ? kInf : bins.cuts[g.last_bin];
      node.child_ranges.push_back(c);
      node.children.push_back(grow(g.rows, depth + 1, used));
    }
    return node;
  }

  const VersionedDataset& data_;
  const BinSet& bins_;
  int max_depth_;
  std::size_t min_leaf_;
};

std::size_t route(const TreeNode& node, const ClassRecord& record) {
  const double v = record[*node.split];
  for (std::size_t i = 0; i < node.child_ranges.size(); ++i) {
    if (node.child_ranges[i].contains(v)) return i;
  }
  return node.children.size() - 1;
}

void collect_leaves(const TreeNode& node, Branch& prefix, std::vector<Branch>& out) {
  if (node.is_leaf()) {
    Branch b = prefix;
    b.score = node.score;
    b.support = node.support;
    out.push_back(std::move(b));
    return;
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    prefix.conditions.push_back(node.child_ranges[i]);
    prefix.path.push_back(i);
    collect_leaves(node.children[i], prefix, out);
    prefix.conditions.pop_back();
    prefix.path.pop_back();
  }
}

}  // namespace

int TreeParams::resolved_min_leaf(std::size_t n) const {
  if (min_leaf > 0) return min_leaf;
  return std::max(5, static_cast<int>(n / 50));
}

DecisionTree build_tree(const VersionedDataset& train, const BinSet& bins, const TreeParams& params) {
  if (train.records.empty()) throw std::invalid_argument("build_tree: empty training data");
  if (params.max_depth < 1) throw std::invalid_argument("build_tree: max_depth must be >= 1");
  if (params.min_leaf < 0) throw std::invalid_argument("build_tree: min_leaf must be >= 1");

  DecisionTree tree;
  tree.bins = bins;
  tree.max_depth = params.max_depth;
  tree.min_leaf = params.resolved_min_leaf(train.records.size());
  tree.observed_min.fill(kInf);
  tree.observed_max.fill(-kInf);
  for (const auto& r : train.records) {
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      tree.observed_min[m] = std::min(tree.observed_min[m], r.metrics[m]);
      tree.observed_max[m] = std::max(tree.observed_max[m], r.metrics[m]);
    }
  }
  tree.root = TreeBuilder(train, tree.bins, tree.max_depth, tree.min_leaf).build();
  return tree;
}

DecisionTree train_tree(const VersionedDataset& train, const TreeParams& params) {
  return build_tree(train, discretize(train), params);
}

Branch locate(const DecisionTree& tree, const ClassRecord& record) {
  Branch b;
  const TreeNode* node = &tree.root;
  while (!node->is_leaf()) {
    const std::size_t i = route(*node, record);
    b.conditions.push_back(node->child_ranges[i]);
    b.path.push_back(i);
    node = &node->children[i];
  }
  b.score = node->score;
  b.support = node->support;
  return b;
}

std::vector<Branch> leaves(const DecisionTree& tree) {
  std::vector<Branch> out;
  Branch prefix;
  collect_leaves(tree.root, prefix, out);
  return out;
}

SiblingSet siblings_at(const DecisionTree& tree, const Branch& branch, int level) {
  SiblingSet result;
  if (level < 0) {
    result.exhausted = true;
    return result;
  }
  if (static_cast<std::size_t>(level) > branch.length()) {
    throw std::invalid_argument("siblings_at: level below the branch's leaf");
  }
  const TreeNode* node = &tree.root;
  Branch prefix;
  for (int d = 0; d < level; ++d) {
    const std::size_t i = branch.path[static_cast<std::size_t>(d)];
    prefix.conditions.push_back(node->child_ranges[i]);
    prefix.path.push_back(i);
    node = &node->children[i];
  }
  std::vector<Branch> under;
  collect_leaves(*node, prefix, under);
  for (auto& b : under) {
    if (b.path != branch.path) result.leaves.push_back(std::move(b));
  }
  return result;
}

bool predict_defective(const DecisionTree& tree, const ClassRecord& record, double threshold) {
  if (threshold < 0) throw std::invalid_argument("predict_defective: threshold must be >= 0");
  return locate(tree, record).score > threshold;
}

int tree_height(const TreeNode& node) {
  int h = 0;
  for (const auto& c : node.children) h = std::max(h, 1 + tree_height(c));
  return h;
}

}  // namespace planwise
