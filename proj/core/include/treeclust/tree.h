// Copyright 2026 The treeclust Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TREECLUST_TREE_H_
#define TREECLUST_TREE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "treeclust/dataset.h"
#include "treeclust/types.h"

namespace treeclust {

enum class ImpurityMetric { kGini, kEntropy };

std::string_view to_string(ImpurityMetric metric);
std::optional<ImpurityMetric> parse_impurity_metric(std::string_view text);

// Gini: 1 - sum p_i^2. Entropy: -sum p_i log2 p_i with 0 log 0 = 0.
// Throws std::invalid_argument when the counts sum to zero.
double impurity(std::span<const std::size_t> class_counts,
                ImpurityMetric metric);

// impurity(parent) - (n_l/n) impurity(left) - (n_r/n) impurity(right).
// An empty side contributes nothing. Throws std::invalid_argument unless
// left + right == parent element-wise.
double split_gain(std::span<const std::size_t> parent,
                  std::span<const std::size_t> left,
                  std::span<const std::size_t> right, ImpurityMetric metric);

// Gains closer than this are ties, and a split must beat min_gain by it.
inline constexpr double kGainTolerance = 1e-12;

enum class SplitOperator {
  kOrdinal,  // left: code <= pivot
  kNominal,  // left: code == pivot
};

struct SplitTest {
  std::size_t attribute = 0;
  Code pivot = 0;
  SplitOperator op = SplitOperator::kOrdinal;

  bool goes_left(Code code) const {
    return op == SplitOperator::kOrdinal ? code <= pivot : code == pivot;
  }
  friend bool operator==(const SplitTest&, const SplitTest&) = default;
};

struct Split {
  SplitTest test;
  double gain = 0;
  RowIds left;
  RowIds right;
};

struct TrainParams {
  ImpurityMetric metric = ImpurityMetric::kGini;
  int max_depth = 5;
  double min_gain = 0.0;
  std::size_t min_samples_leaf = 1;
  // Attribute scans of one node may run on this many threads; the chosen
  // split does not depend on it.
  unsigned num_threads = 1;
};

// Throws ConfigError for max_depth < 1, negative min_gain or
// min_samples_leaf < 1.
void validate(const TrainParams& params);

// Best admissible split of `rows` over every attribute and every code
// present among the rows. Ties go to the lower column index, then the lower
// pivot. Returns nullopt when no split beats params.min_gain.
std::optional<Split> best_split(std::span<const RowId> rows, const Dataset& ds,
                                const TrainParams& params);

struct TreeNode {
  NodeId id = 0;
  NodeId parent = kNoNode;
  NodeId left = kNoNode;
  NodeId right = kNoNode;
  int depth = 0;
  std::optional<SplitTest> split;
  double gain = 0;
  std::vector<std::size_t> class_counts;
  std::size_t samples = 0;
  double impurity = 0;
  ClassCode decision = 0;
  // Training rows reaching this node, ascending.
  RowIds rows;

  bool is_leaf() const { return !split.has_value(); }
};

class DecisionTree {
 public:
  DecisionTree() = default;
  // Nodes must be indexed by id with the root at 0.
  DecisionTree(std::vector<TreeNode> nodes, TrainParams params);

  const TreeNode& root() const { return nodes_.front(); }
  const TreeNode& node(NodeId id) const { return nodes_.at(id); }
  std::span<const TreeNode> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  const TrainParams& params() const { return params_; }

  // Node ids from the root down to `id`, inclusive.
  std::vector<NodeId> path_to(NodeId id) const;
  bool is_ancestor(NodeId ancestor, NodeId id) const;
  bool related(NodeId a, NodeId b) const {
    return a == b || is_ancestor(a, b) || is_ancestor(b, a);
  }

 private:
  std::vector<TreeNode> nodes_;
  TrainParams params_;
};

// Recursive CART growth over `rows` (all rows when omitted), depth limited
// by params.max_depth. Node ids are breadth-first; leaves take the majority
// class, ties to the lower class code. Throws DataError on an empty row set.
DecisionTree train(const Dataset& ds, std::span<const RowId> rows,
                   const TrainParams& params);
DecisionTree train(const Dataset& ds, const TrainParams& params);

// Per-class counts of `rows`.
std::vector<std::size_t> count_classes(const Dataset& ds,
                                       std::span<const RowId> rows);

}  // namespace treeclust

#endif  // TREECLUST_TREE_H_
