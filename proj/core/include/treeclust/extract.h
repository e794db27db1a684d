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

#ifndef TREECLUST_EXTRACT_H_
#define TREECLUST_EXTRACT_H_

#include <cstddef>
#include <vector>

#include "treeclust/dataset.h"
#include "treeclust/preprocess.h"
#include "treeclust/rule.h"
#include "treeclust/tree.h"
#include "treeclust/types.h"

namespace treeclust {

// (1 + b^2) P R / (b^2 P + R), and 0 when P = R = 0.
double f_beta(double precision, double recall, double beta);

// F-beta of a node for `target_class`: tp is the node's target count,
// fp the rest of the node and fn the targets outside it. Throws
// std::invalid_argument for beta <= 0, total_in_class == 0 or a node
// holding more targets than total_in_class.
double node_fbeta(const TreeNode& node, ClassCode target_class, double beta,
                  std::size_t total_in_class);

struct ClusterCandidate {
  std::size_t tree_index = 0;
  NodeId node_id = 0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0;
  double recall = 0;
  double f_beta = 0;
  std::size_t size = 0;
  double impurity = 0;
  // Recall against every target row of the full dataset.
  double recall_original = 0;
  Rule rule;
  // Original dataset row ids, ascending.
  RowIds row_ids;
};

// Metrics of one node against `total_in_class` targets.
ClusterCandidate make_candidate(const DecisionTree& tree, NodeId node_id,
                                ClassCode target_class, double beta,
                                std::size_t total_in_class);

// Every node, best F-beta first, ties to the smaller node id. Recall is
// taken against the root's target count. Rules are left empty.
std::vector<ClusterCandidate> rank_nodes(const DecisionTree& tree,
                                         ClassCode target_class, double beta);

// Greedy pass over rank_nodes() skipping ancestors and descendants of
// nodes already taken.
std::vector<ClusterCandidate> select_from_single_tree(
    const DecisionTree& tree, ClassCode target_class, double beta,
    std::size_t k);

struct ExtractionResult {
  std::vector<ClusterCandidate> clusters;
  // Tree of every iteration, including a final one that yielded nothing.
  std::vector<DecisionTree> trees;
  // Rows each tree was trained on.
  std::vector<RowIds> training_rows;
};

// Trains, takes the best node by F-beta against the remaining targets,
// removes its rows and retrains, up to `n_clusters` times. Stops early
// when no node scores above zero or no rows remain. Rules are linearized
// over prepared.source. Throws ConfigError for an invalid target class.
ExtractionResult extract_iterative(const PreparedData& prepared,
                                   const TrainParams& params,
                                   ClassCode target_class, double beta,
                                   std::size_t n_clusters);

// Everything needed to re-run an extraction on another sample.
struct ExtractionConfig {
  PreprocessConfig preprocess;
  TrainParams train;
  ClassCode target_class = 1;
  double beta = 0.33;
  std::size_t n_clusters = 3;
};

ExtractionResult run_extraction(const Dataset& source,
                                const ExtractionConfig& config);

}  // namespace treeclust

#endif  // TREECLUST_EXTRACT_H_
