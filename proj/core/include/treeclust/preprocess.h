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

#ifndef TREECLUST_PREPROCESS_H_
#define TREECLUST_PREPROCESS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treeclust/binning.h"
#include "treeclust/dataset.h"
#include "treeclust/ordinal_encoding.h"
#include "treeclust/types.h"

namespace treeclust {

struct ColumnPlan {
  std::optional<BinningMethod> method;
  std::size_t bins = 0;
  // Overrides PreprocessConfig::reorder_symbolic for this column.
  std::optional<bool> reorder;
  bool drop = false;
};

struct PreprocessConfig {
  // Applied to numeric columns without a plan; 0 bins disables it.
  BinningMethod numeric_method = BinningMethod::kNumericPercentile;
  std::size_t numeric_bins = 0;
  // Class-frequency ordering of nominal symbolic columns.
  bool reorder_symbolic = true;
  // Symbolic and datetime columns with more unique values must be binned by
  // plan or are dropped.
  std::size_t high_cardinality_threshold = 100;
  std::map<std::string, ColumnPlan> columns;
};

// How one working column derives from its source column.
struct ColumnTransform {
  std::string column;
  std::size_t source_index = 0;
  ColumnKind source_kind = ColumnKind::kNominal;
  ColumnKind working_kind = ColumnKind::kNominal;
  // Source code -> working code, composed over every step below.
  std::vector<Code> code_map;
  std::optional<BinningSpec> binning;
  std::optional<OrdinalEncoding> encoding;
};

// One entry per working column, in working column order.
struct TransformLog {
  std::vector<ColumnTransform> columns;
  std::vector<std::string> dropped;
  std::vector<std::string> warnings;
};

struct PreparedData {
  Dataset source;
  Dataset working;
  TransformLog log;
};

// Identity transforms for a dataset used as-is.
TransformLog identity_transforms(const Dataset& ds);

// Bins, reorders and drops columns per `config`. Frequency orders are
// fitted against `target_class`. Throws ConfigError when a plan names an
// unknown column or a method that does not fit the column kind.
PreparedData prepare(const Dataset& source, const PreprocessConfig& config,
                     ClassCode target_class);

}  // namespace treeclust

#endif  // TREECLUST_PREPROCESS_H_
