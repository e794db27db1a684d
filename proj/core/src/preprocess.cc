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

#include "treeclust/preprocess.h"

#include <numeric>

namespace treeclust {
namespace {

std::vector<Code> identity_map(const Column& column) {
  std::vector<Code> map(column.cardinality() + 1);
  std::iota(map.begin(), map.end(), Code{0});
  return map;
}

void compose(std::vector<Code>& map, const std::vector<Code>& step) {
  for (Code& code : map) code = step.at(code);
}

bool method_fits(BinningMethod method, ColumnKind kind) {
  switch (method) {
    case BinningMethod::kNumericEqualWidth:
    case BinningMethod::kNumericPercentile:
      return kind == ColumnKind::kNumeric;
    case BinningMethod::kDatetimeEqualWidth:
    case BinningMethod::kDatetimeFrequency:
      return kind == ColumnKind::kDatetime;
    default:
      return is_symbolic(kind) || kind == ColumnKind::kBoolean;
  }
}

}  // namespace

TransformLog identity_transforms(const Dataset& ds) {
  TransformLog log;
  for (std::size_t i = 0; i < ds.columns.size(); ++i) {
    const Column& col = ds.columns[i];
    ColumnTransform t;
    t.column = col.name;
    t.source_index = i;
    t.source_kind = t.working_kind = col.kind;
    t.code_map = identity_map(col);
    log.columns.push_back(std::move(t));
  }
  return log;
}

PreparedData prepare(const Dataset& source, const PreprocessConfig& config,
                     ClassCode target_class) {
  if (!source.labelled()) throw ConfigError("dataset has no class labels");
  if (target_class >= source.class_count()) {
    throw ConfigError("target class code " + std::to_string(target_class) +
                      " out of range");
  }
  for (const auto& [name, plan] : config.columns) {
    if (!source.column_index(name)) {
      throw ConfigError("preprocessing plan names unknown column '" + name + "'");
    }
  }

  PreparedData out;
  out.source = source;
  out.working.label_name = source.label_name;
  out.working.labels = source.labels;
  out.working.class_names = source.class_names;

  for (std::size_t i = 0; i < source.columns.size(); ++i) {
    const Column& original = source.columns[i];
    const auto plan_it = config.columns.find(original.name);
    const ColumnPlan plan =
        plan_it == config.columns.end() ? ColumnPlan{} : plan_it->second;
    if (plan.drop) {
      out.log.dropped.push_back(original.name);
      continue;
    }

    ColumnTransform t;
    t.column = original.name;
    t.source_index = i;
    t.source_kind = original.kind;
    t.code_map = identity_map(original);
    Column col = original;

    std::optional<BinningMethod> method = plan.method;
    std::size_t bins = plan.bins;
    if (!method && original.kind == ColumnKind::kNumeric && config.numeric_bins) {
      method = config.numeric_method;
      bins = config.numeric_bins;
    }
    if (method) {
      if (!method_fits(*method, original.kind)) {
        throw ConfigError(std::string(to_string(*method)) +
                          " does not apply to " +
                          std::string(to_string(original.kind)) + " column '" +
                          original.name + "'");
      }
      if (bins < 2) {
        throw ConfigError("column '" + original.name + "' needs at least 2 bins");
      }
      const bool symbolic = is_symbolic(original.kind) ||
                            original.kind == ColumnKind::kBoolean;
      if (original.cardinality() < (symbolic ? 2u : 1u)) {
        out.log.warnings.push_back("column '" + original.name +
                                   "' has too few values to bin; left as is");
      } else {
        BinnedColumn binned =
            symbolic ? bin_symbolic(original, bins, *method)
            : original.kind == ColumnKind::kDatetime
                ? bin_datetime(original, bins, *method)
                : bin_numeric(original, bins, *method);
        if (!binned.spec.warning.empty()) {
          out.log.warnings.push_back(binned.spec.warning);
        }
        compose(t.code_map, binned.spec.code_map);
        col = std::move(binned.column);
        t.binning = std::move(binned.spec);
      }
    }

    const bool guarded = col.kind != ColumnKind::kNumeric;
    if (guarded && col.cardinality() > config.high_cardinality_threshold) {
      out.log.dropped.push_back(original.name);
      out.log.warnings.push_back(
          "column '" + original.name + "' dropped: " +
          std::to_string(col.cardinality()) +
          " unique values exceed the high-cardinality threshold of " +
          std::to_string(config.high_cardinality_threshold) +
          "; bin it to keep it");
      continue;
    }

    const bool reorder = plan.reorder.value_or(
        config.reorder_symbolic && col.kind == ColumnKind::kNominal);
    if (reorder && (is_symbolic(col.kind) || col.kind == ColumnKind::kBoolean)) {
      EncodedColumn encoded =
          encode_by_class_frequency(col, source.labels, target_class);
      compose(t.code_map, encoded.encoding.permutation);
      col = std::move(encoded.column);
      t.encoding = std::move(encoded.encoding);
    } else if (reorder && plan.reorder.value_or(false)) {
      throw ConfigError("column '" + original.name +
                        "' is not symbolic and cannot be reordered");
    }

    t.working_kind = col.kind;
    out.working.columns.push_back(std::move(col));
    out.log.columns.push_back(std::move(t));
  }
  out.working.validate();
  return out;
}

}  // namespace treeclust
