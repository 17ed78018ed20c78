#pragma once

#include <compare>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "planwise/data_model.hpp"
#include "planwise/discretize.hpp"

namespace planwise {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// A metric restricted to the interval (low, high]. An infinite low bound
// includes everything below high.
struct Condition {
  Metric metric = Metric::wmc;
  double low = -kInf;
  double high = kInf;

  bool contains(double value) const {
    return (low == -kInf || value > low) && value <= high;
  }
  friend bool operator==(const Condition&, const Condition&) = default;
  friend auto operator<=>(const Condition&, const Condition&) = default;
};

struct TreeNode {
  int depth = 0;
  std::size_t support = 0;
  std::size_t defective = 0;
  long defects = 0;
  double score = 0.0;  // mean defect count of the records reaching this node

  std::optional<Metric> split;
  std::vector<Condition> child_ranges;  // parallel to children, partitions the line
  std::vector<TreeNode> children;

  bool is_leaf() const { return children.empty(); }
};

struct TreeParams {
  int max_depth = 10;
  int min_leaf = 0;  // 0 selects max(5, N/50)

  int resolved_min_leaf(std::size_t n) const;
};

struct DecisionTree {
  TreeNode root;
  BinSet bins;
  PerMetric<double> observed_min{};
  PerMetric<double> observed_max{};
  int max_depth = 10;
  int min_leaf = 5;
};

// Root-to-leaf path. `path` holds the child index taken at each level.
struct Branch {
  std::vector<Condition> conditions;
  std::vector<std::size_t> path;
  double score = 0.0;
  std::size_t support = 0;

  std::size_t length() const { return path.size(); }
};

struct SiblingSet {
  std::vector<Branch> leaves;
  bool exhausted = false;  // requested level lies above the root
};

DecisionTree build_tree(const VersionedDataset& train, const BinSet& bins,
                        const TreeParams& params = {});
// Discretizes `train` and builds the tree on the result.
DecisionTree train_tree(const VersionedDataset& train, const TreeParams& params = {});

Branch locate(const DecisionTree& tree, const ClassRecord& record);

// Leaves under the ancestor of `branch` at depth `level`, excluding the
// branch's own leaf. level < 0 yields an exhausted, empty set.
SiblingSet siblings_at(const DecisionTree& tree, const Branch& branch, int level);

std::vector<Branch> leaves(const DecisionTree& tree);

bool predict_defective(const DecisionTree& tree, const ClassRecord& record,
                       double threshold = 0.5);

int tree_height(const TreeNode& node);

}  // namespace planwise
