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

// Exhaustive split search used as a reference for the tree trainer. It
// partitions the rows explicitly for every (column, pivot) pair instead of
// scanning histograms.

#ifndef TREECLUST_TESTS_ORACLES_SPLIT_ORACLE_H_
#define TREECLUST_TESTS_ORACLES_SPLIT_ORACLE_H_

#include <cmath>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "treeclust/dataset.h"
#include "treeclust/tree.h"

namespace treeclust::oracle {

struct OracleSplit {
  std::size_t attribute = 0;
  Code pivot = 0;
  double gain = 0;
};

inline double reference_impurity(const std::vector<double>& counts,
                                 ImpurityMetric metric) {
  double n = 0;
  for (double c : counts) n += c;
  double out = metric == ImpurityMetric::kGini ? 1.0 : 0.0;
  for (double c : counts) {
    if (c == 0) continue;
    const double p = c / n;
    out += metric == ImpurityMetric::kGini ? -p * p : -p * std::log2(p);
  }
  return out;
}

inline std::optional<OracleSplit> brute_force_split(std::span<const RowId> rows,
                                                    const Dataset& ds,
                                                    const TrainParams& params) {
  const std::size_t k = ds.class_count();
  std::vector<double> parent(k, 0);
  for (RowId r : rows) parent[ds.labels[r]] += 1;
  const double n = static_cast<double>(rows.size());
  const double parent_impurity = reference_impurity(parent, params.metric);

  std::optional<OracleSplit> best;
  for (std::size_t a = 0; a < ds.columns.size(); ++a) {
    const Column& col = ds.columns[a];
    std::set<Code> present;
    for (RowId r : rows) present.insert(col.codes[r]);
    for (Code pivot : present) {
      SplitTest test{a, pivot,
                     is_ordered(col.kind) ? SplitOperator::kOrdinal
                                          : SplitOperator::kNominal};
      std::vector<double> left(k, 0), right(k, 0);
      double nl = 0, nr = 0;
      for (RowId r : rows) {
        if (test.goes_left(col.codes[r])) {
          left[ds.labels[r]] += 1;
          nl += 1;
        } else {
          right[ds.labels[r]] += 1;
          nr += 1;
        }
      }
      const double min_leaf = static_cast<double>(params.min_samples_leaf);
      if (nl < min_leaf || nr < min_leaf) continue;
      const double gain = parent_impurity -
                          nl / n * reference_impurity(left, params.metric) -
                          nr / n * reference_impurity(right, params.metric);
      if (!(gain > params.min_gain + kGainTolerance)) continue;
      if (!best || gain > best->gain + kGainTolerance) {
        best = OracleSplit{a, pivot, gain};
      }
    }
  }
  return best;
}

}  // namespace treeclust::oracle

#endif  // TREECLUST_TESTS_ORACLES_SPLIT_ORACLE_H_
