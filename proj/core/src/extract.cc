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

#include "treeclust/extract.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace treeclust {
namespace {

void check_beta(double beta) {
  if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
}

void check_target(const Dataset& ds, ClassCode target_class) {
  if (!ds.labelled()) throw ConfigError("dataset has no class labels");
  if (ds.class_count() < 2) {
    throw ConfigError("extraction needs at least two classes");
  }
  if (target_class >= ds.class_count()) {
    throw ConfigError("target class " + std::to_string(target_class) +
                      " out of range (" + std::to_string(ds.class_count()) +
                      " classes)");
  }
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double f_beta(double precision, double recall, double beta) {
  check_beta(beta);
  const double b2 = beta * beta;
  const double den = b2 * precision + recall;
  if (den == 0) return 0.0;
  return (1 + b2) * precision * recall / den;
}

double node_fbeta(const TreeNode& node, ClassCode target_class, double beta,
                  std::size_t total_in_class) {
  check_beta(beta);
  if (total_in_class == 0) {
    throw std::invalid_argument("no rows of the target class");
  }
  const std::size_t tp = node.class_counts.at(target_class);
  if (tp > total_in_class) {
    throw std::invalid_argument("node holds more targets than the total");
  }
  return f_beta(ratio(tp, node.samples), ratio(tp, total_in_class), beta);
}

ClusterCandidate make_candidate(const DecisionTree& tree, NodeId node_id,
                                ClassCode target_class, double beta,
                                std::size_t total_in_class) {
  const TreeNode& node = tree.node(node_id);
  ClusterCandidate c;
  c.node_id = node_id;
  c.tp = node.class_counts.at(target_class);
  c.fp = node.samples - c.tp;
  c.fn = total_in_class >= c.tp ? total_in_class - c.tp : 0;
  c.size = node.samples;
  c.precision = ratio(c.tp, c.size);
  c.recall = ratio(c.tp, total_in_class);
  c.f_beta = total_in_class == 0
                 ? 0.0
                 : node_fbeta(node, target_class, beta, total_in_class);
  c.impurity = node.impurity;
  c.recall_original = c.recall;
  c.row_ids = node.rows;
  c.rule.target_class = target_class;
  return c;
}

std::vector<ClusterCandidate> rank_nodes(const DecisionTree& tree,
                                         ClassCode target_class, double beta) {
  check_beta(beta);
  if (tree.size() == 0) return {};
  const std::size_t total = tree.root().class_counts.at(target_class);
  std::vector<ClusterCandidate> ranked;
  ranked.reserve(tree.size());
  for (const TreeNode& node : tree.nodes()) {
    ranked.push_back(make_candidate(tree, node.id, target_class, beta, total));
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const ClusterCandidate& a, const ClusterCandidate& b) {
                     if (a.f_beta != b.f_beta) return a.f_beta > b.f_beta;
                     return a.node_id < b.node_id;
                   });
  return ranked;
}

std::vector<ClusterCandidate> select_from_single_tree(const DecisionTree& tree,
                                                      ClassCode target_class,
                                                      double beta,
                                                      std::size_t k) {
  std::vector<ClusterCandidate> chosen;
  for (auto& candidate : rank_nodes(tree, target_class, beta)) {
    if (chosen.size() >= k) break;
    const bool clash = std::any_of(
        chosen.begin(), chosen.end(), [&](const ClusterCandidate& c) {
          return tree.related(c.node_id, candidate.node_id);
        });
    if (!clash) chosen.push_back(std::move(candidate));
  }
  return chosen;
}

ExtractionResult extract_iterative(const PreparedData& prepared,
                                   const TrainParams& params,
                                   ClassCode target_class, double beta,
                                   std::size_t n_clusters) {
  const Dataset& ds = prepared.working;
  check_target(ds, target_class);
  validate(params);
  if (!(beta > 0)) throw ConfigError("beta must be positive");

  std::size_t total_original = 0;
  for (ClassCode label : ds.labels) total_original += label == target_class;

  ExtractionResult result;
  RowIds remaining = all_rows(ds);
  for (std::size_t k = 0; k < n_clusters && !remaining.empty(); ++k) {
    DecisionTree tree = train(ds, remaining, params);
    auto ranked = rank_nodes(tree, target_class, beta);
    result.trees.push_back(tree);
    result.training_rows.push_back(remaining);
    if (ranked.empty() || !(ranked.front().f_beta > 0)) break;

    ClusterCandidate best = std::move(ranked.front());
    best.tree_index = k;
    best.rule = linearize_rule(tree, best.node_id, prepared.log, prepared.source);
    best.rule.target_class = target_class;
    best.recall_original = ratio(best.tp, total_original);

    RowIds rest;
    rest.reserve(remaining.size() - best.row_ids.size());
    std::set_difference(remaining.begin(), remaining.end(),
                        best.row_ids.begin(), best.row_ids.end(),
                        std::back_inserter(rest));
    remaining = std::move(rest);
    result.clusters.push_back(std::move(best));
  }
  return result;
}

ExtractionResult run_extraction(const Dataset& source,
                                const ExtractionConfig& config) {
  check_target(source, config.target_class);
  const PreparedData prepared =
      prepare(source, config.preprocess, config.target_class);
  return extract_iterative(prepared, config.train, config.target_class,
                           config.beta, config.n_clusters);
}

}  // namespace treeclust
