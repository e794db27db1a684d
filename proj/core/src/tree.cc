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

#include "treeclust/tree.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <thread>

namespace treeclust {
namespace {

double impurity_unchecked(const std::size_t* counts, std::size_t k,
                          std::size_t total, ImpurityMetric metric) {
  const double n = static_cast<double>(total);
  double acc = 0;
  if (metric == ImpurityMetric::kGini) {
    for (std::size_t c = 0; c < k; ++c) {
      const double p = static_cast<double>(counts[c]) / n;
      acc += p * p;
    }
    return 1.0 - acc;
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] == 0) continue;
    const double p = static_cast<double>(counts[c]) / n;
    acc -= p * std::log2(p);
  }
  return acc;
}

// Weighted impurity decrease from precomputed parent impurity.
double gain_of(double parent_impurity, std::size_t n, const std::size_t* left,
               std::size_t n_left, const std::size_t* right, std::size_t n_right,
               std::size_t k, ImpurityMetric metric) {
  const double total = static_cast<double>(n);
  double weighted = 0;
  if (n_left) {
    weighted += static_cast<double>(n_left) / total *
                impurity_unchecked(left, k, n_left, metric);
  }
  if (n_right) {
    weighted += static_cast<double>(n_right) / total *
                impurity_unchecked(right, k, n_right, metric);
  }
  return parent_impurity - weighted;
}

struct Candidate {
  bool found = false;
  double gain = 0;
  Code pivot = 0;
};

Candidate scan_column(const Column& column, std::span<const RowId> rows,
                      std::span<const ClassCode> labels,
                      const std::vector<std::size_t>& parent,
                      double parent_impurity, const TrainParams& params) {
  const std::size_t k = parent.size();
  const std::size_t card = column.cardinality();
  const std::size_t n = rows.size();
  const std::size_t min_leaf = params.min_samples_leaf;
  std::vector<std::size_t> hist((card + 1) * k, 0);
  std::vector<std::size_t> code_total(card + 1, 0);
  for (RowId r : rows) {
    const Code code = column.codes[r];
    ++hist[code * k + labels[r]];
    ++code_total[code];
  }

  Candidate best;
  const double threshold = params.min_gain + kGainTolerance;
  std::vector<std::size_t> left(k, 0);
  std::vector<std::size_t> right(k, 0);
  auto consider = [&](Code pivot, std::size_t n_left) {
    for (std::size_t c = 0; c < k; ++c) right[c] = parent[c] - left[c];
    const double g = gain_of(parent_impurity, n, left.data(), n_left,
                             right.data(), n - n_left, k, params.metric);
    if (g > threshold && (!best.found || g > best.gain + kGainTolerance)) {
      best.found = true;
      best.gain = g;
      best.pivot = pivot;
    }
  };

  if (is_ordered(column.kind)) {
    std::size_t n_left = 0;
    for (Code p = 0; p <= card; ++p) {
      if (code_total[p] == 0) continue;
      for (std::size_t c = 0; c < k; ++c) left[c] += hist[p * k + c];
      n_left += code_total[p];
      if (n - n_left < min_leaf) break;
      if (n_left < min_leaf) continue;
      consider(p, n_left);
    }
  } else {
    for (Code p = 0; p <= card; ++p) {
      const std::size_t n_left = code_total[p];
      if (n_left == 0 || n_left < min_leaf || n - n_left < min_leaf) continue;
      for (std::size_t c = 0; c < k; ++c) left[c] = hist[p * k + c];
      consider(p, n_left);
    }
  }
  return best;
}

TreeNode make_node(const Dataset& ds, RowIds rows, NodeId id, NodeId parent,
                   int depth, ImpurityMetric metric) {
  TreeNode node;
  node.id = id;
  node.parent = parent;
  node.depth = depth;
  node.class_counts = count_classes(ds, rows);
  node.samples = rows.size();
  node.impurity = impurity(node.class_counts, metric);
  node.decision = static_cast<ClassCode>(
      std::max_element(node.class_counts.begin(), node.class_counts.end()) -
      node.class_counts.begin());
  node.rows = std::move(rows);
  return node;
}

}  // namespace

std::string_view to_string(ImpurityMetric metric) {
  return metric == ImpurityMetric::kGini ? "gini" : "entropy";
}

std::optional<ImpurityMetric> parse_impurity_metric(std::string_view text) {
  if (text == "gini") return ImpurityMetric::kGini;
  if (text == "entropy") return ImpurityMetric::kEntropy;
  return std::nullopt;
}

double impurity(std::span<const std::size_t> class_counts,
                ImpurityMetric metric) {
  std::size_t total = 0;
  for (auto c : class_counts) total += c;
  if (total == 0) throw std::invalid_argument("impurity of an empty node");
  return impurity_unchecked(class_counts.data(), class_counts.size(), total,
                            metric);
}

double split_gain(std::span<const std::size_t> parent,
                  std::span<const std::size_t> left,
                  std::span<const std::size_t> right, ImpurityMetric metric) {
  if (left.size() != parent.size() || right.size() != parent.size()) {
    throw std::invalid_argument("class count vectors differ in length");
  }
  std::size_t n_left = 0, n_right = 0;
  for (std::size_t c = 0; c < parent.size(); ++c) {
    if (left[c] + right[c] != parent[c]) {
      throw std::invalid_argument("left + right counts do not equal parent");
    }
    n_left += left[c];
    n_right += right[c];
  }
  return gain_of(impurity(parent, metric), n_left + n_right, left.data(),
                 n_left, right.data(), n_right, parent.size(), metric);
}

void validate(const TrainParams& params) {
  if (params.max_depth < 1) throw ConfigError("max_depth must be at least 1");
  if (!(params.min_gain >= 0)) throw ConfigError("min_gain must be >= 0");
  if (params.min_samples_leaf < 1) {
    throw ConfigError("min_samples_leaf must be at least 1");
  }
}

std::vector<std::size_t> count_classes(const Dataset& ds,
                                       std::span<const RowId> rows) {
  std::vector<std::size_t> counts(ds.class_count(), 0);
  for (RowId r : rows) ++counts[ds.labels[r]];
  return counts;
}

std::optional<Split> best_split(std::span<const RowId> rows, const Dataset& ds,
                                const TrainParams& params) {
  if (rows.size() < 2 * params.min_samples_leaf || rows.size() < 2) {
    return std::nullopt;
  }
  const auto parent = count_classes(ds, rows);
  const double parent_impurity = impurity(parent, params.metric);

  const std::size_t columns = ds.columns.size();
  std::vector<Candidate> per_column(columns);
  const unsigned threads =
      std::min<unsigned>(std::max(1u, params.num_threads),
                         static_cast<unsigned>(std::max<std::size_t>(columns, 1)));
  auto scan_range = [&](std::size_t begin, std::size_t step) {
    for (std::size_t c = begin; c < columns; c += step) {
      per_column[c] = scan_column(ds.columns[c], rows, ds.labels, parent,
                                  parent_impurity, params);
    }
  };
  if (threads > 1) {
    std::vector<std::jthread> workers;
    for (unsigned t = 1; t < threads; ++t) workers.emplace_back(scan_range, t, threads);
    scan_range(0, threads);
  } else {
    scan_range(0, 1);
  }

  std::optional<std::size_t> best_column;
  for (std::size_t c = 0; c < columns; ++c) {
    const Candidate& cand = per_column[c];
    if (!cand.found) continue;
    if (!best_column ||
        cand.gain > per_column[*best_column].gain + kGainTolerance) {
      best_column = c;
    }
  }
  if (!best_column) return std::nullopt;

  Split split;
  split.test.attribute = *best_column;
  split.test.pivot = per_column[*best_column].pivot;
  split.test.op = is_ordered(ds.columns[*best_column].kind)
                      ? SplitOperator::kOrdinal
                      : SplitOperator::kNominal;
  split.gain = per_column[*best_column].gain;
  const auto& codes = ds.columns[*best_column].codes;
  for (RowId r : rows) {
    (split.test.goes_left(codes[r]) ? split.left : split.right).push_back(r);
  }
  return split;
}

DecisionTree::DecisionTree(std::vector<TreeNode> nodes, TrainParams params)
    : nodes_(std::move(nodes)), params_(params) {
  if (nodes_.empty()) throw std::invalid_argument("a tree needs a root node");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].id != static_cast<NodeId>(i)) {
      throw std::invalid_argument("node ids must match their positions");
    }
  }
}

std::vector<NodeId> DecisionTree::path_to(NodeId id) const {
  std::vector<NodeId> path;
  for (NodeId cur = id; cur != kNoNode; cur = node(cur).parent) {
    path.push_back(cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

bool DecisionTree::is_ancestor(NodeId ancestor, NodeId id) const {
  for (NodeId cur = node(id).parent; cur != kNoNode; cur = node(cur).parent) {
    if (cur == ancestor) return true;
  }
  return false;
}

DecisionTree train(const Dataset& ds, std::span<const RowId> rows,
                   const TrainParams& params) {
  validate(params);
  if (!ds.labelled()) throw ConfigError("cannot train on an unlabelled dataset");
  if (rows.empty()) throw DataError("cannot train on an empty dataset");

  RowIds root_rows(rows.begin(), rows.end());
  std::sort(root_rows.begin(), root_rows.end());
  std::vector<TreeNode> nodes;
  nodes.push_back(make_node(ds, std::move(root_rows), 0, kNoNode, 0, params.metric));

  std::deque<NodeId> queue = {0};
  while (!queue.empty()) {
    const NodeId id = queue.front();
    queue.pop_front();
    const TreeNode& node = nodes[id];
    if (node.depth >= params.max_depth || node.impurity == 0.0) continue;
    auto split = best_split(node.rows, ds, params);
    if (!split) continue;

    const int depth = node.depth + 1;
    const auto left_id = static_cast<NodeId>(nodes.size());
    const auto right_id = left_id + 1;
    nodes[id].split = split->test;
    nodes[id].gain = split->gain;
    nodes[id].left = left_id;
    nodes[id].right = right_id;
    nodes.push_back(make_node(ds, std::move(split->left), left_id, id, depth,
                              params.metric));
    nodes.push_back(make_node(ds, std::move(split->right), right_id, id, depth,
                              params.metric));
    queue.push_back(left_id);
    queue.push_back(right_id);
  }
  return DecisionTree(std::move(nodes), params);
}

DecisionTree train(const Dataset& ds, const TrainParams& params) {
  const RowIds rows = all_rows(ds);
  return train(ds, rows, params);
}

}  // namespace treeclust
