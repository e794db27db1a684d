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

#ifndef TREECLUST_DOT_H_
#define TREECLUST_DOT_H_

#include <span>
#include <string>

#include "treeclust/dataset.h"
#include "treeclust/preprocess.h"
#include "treeclust/tree.h"

namespace treeclust {

struct DotOptions {
  // Nodes drawn filled and bold.
  std::span<const NodeId> highlight;
  // When set with `source`, split tests are decoded to original values.
  const TransformLog* log = nullptr;
  const Dataset* source = nullptr;
};

// Graphviz digraph of the tree over the working dataset `ds`. Each node
// shows its id, split test, impurity, samples and decision; edges are
// labelled "true" / "false".
std::string to_dot(const DecisionTree& tree, const Dataset& ds,
                   const DotOptions& options = {});

}  // namespace treeclust

#endif  // TREECLUST_DOT_H_
