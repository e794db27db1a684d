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

#ifndef TREECLUST_TESTS_SUPPORT_MANUAL_TREE_H_
#define TREECLUST_TESTS_SUPPORT_MANUAL_TREE_H_

#include <algorithm>
#include <deque>
#include <optional>
#include <vector>

#include "treeclust/tree.h"

namespace treeclust::testing {

// Tree over `ds` whose node i (breadth-first id) applies splits[i] when
// set. Rows, counts, impurity and decisions are filled in.
inline DecisionTree manual_tree(const Dataset& ds,
                                const std::vector<std::optional<SplitTest>>& splits,
                                TrainParams params = {}) {
  std::vector<TreeNode> nodes;
  auto add = [&](RowIds rows, NodeId parent, int depth) {
    TreeNode n;
    n.id = static_cast<NodeId>(nodes.size());
    n.parent = parent;
    n.depth = depth;
    n.class_counts = count_classes(ds, rows);
    n.samples = rows.size();
    n.impurity = n.samples ? impurity(n.class_counts, params.metric) : 0.0;
    n.decision = static_cast<ClassCode>(
        std::max_element(n.class_counts.begin(), n.class_counts.end()) -
        n.class_counts.begin());
    n.rows = std::move(rows);
    nodes.push_back(std::move(n));
    return nodes.back().id;
  };
  add(all_rows(ds), kNoNode, 0);
  std::deque<NodeId> queue{0};
  while (!queue.empty()) {
    const NodeId id = queue.front();
    queue.pop_front();
    if (static_cast<std::size_t>(id) >= splits.size() || !splits[id]) continue;
    const SplitTest test = *splits[id];
    const Column& col = ds.columns.at(test.attribute);
    RowIds left, right;
    for (RowId r : nodes[id].rows) {
      (test.goes_left(col.codes[r]) ? left : right).push_back(r);
    }
    const int depth = nodes[id].depth + 1;
    const NodeId l = add(std::move(left), id, depth);
    const NodeId r = add(std::move(right), id, depth);
    nodes[id].split = test;
    nodes[id].left = l;
    nodes[id].right = r;
    queue.push_back(l);
    queue.push_back(r);
  }
  return DecisionTree(std::move(nodes), params);
}

}  // namespace treeclust::testing

#endif  // TREECLUST_TESTS_SUPPORT_MANUAL_TREE_H_
