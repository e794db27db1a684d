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

#ifndef TREECLUST_DATASET_H_
#define TREECLUST_DATASET_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treeclust/csv.h"
#include "treeclust/types.h"

namespace treeclust {

enum class ColumnKind {
  kNumeric,
  kNominal,   // symbolic, no usable order
  kOrdinal,   // symbolic with an imposed order
  kDatetime,
  kBoolean,
};

std::string_view to_string(ColumnKind kind);
// Accepts "numeric", "nominal" / "symbolic-nominal", "ordinal" /
// "symbolic-ordinal", "datetime", "boolean".
std::optional<ColumnKind> parse_column_kind(std::string_view text);

// Ordered kinds split by <= / >; the rest split by = / !=.
constexpr bool is_ordered(ColumnKind kind) {
  return kind == ColumnKind::kNumeric || kind == ColumnKind::kOrdinal ||
         kind == ColumnKind::kDatetime;
}
constexpr bool is_symbolic(ColumnKind kind) {
  return kind == ColumnKind::kNominal || kind == ColumnKind::kOrdinal;
}
constexpr bool has_natural_values(ColumnKind kind) {
  return kind == ColumnKind::kNumeric || kind == ColumnKind::kDatetime;
}

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::kNominal;
  // Pattern the cells were parsed with; datetime columns only.
  std::string datetime_pattern;
  // One code per row.
  std::vector<Code> codes;
  // dictionary[i] is the text of code i + 1.
  std::vector<std::string> dictionary;
  // Natural value of code i + 1, ascending; numeric and datetime columns.
  std::vector<double> values;

  std::size_t cardinality() const { return dictionary.size(); }
  // Text of a non-missing code.
  const std::string& decode(Code code) const { return dictionary.at(code - 1); }
  double value_of(Code code) const { return values.at(code - 1); }
};

struct Dataset {
  std::vector<Column> columns;
  std::string label_name;
  std::vector<ClassCode> labels;
  // class_names[c] is the label text of class code c. Empty when unlabelled.
  std::vector<std::string> class_names;

  std::size_t row_count() const;
  std::size_t class_count() const { return class_names.size(); }
  bool labelled() const { return !class_names.empty(); }

  std::optional<std::size_t> column_index(std::string_view name) const;
  // Throws ConfigError for unknown names.
  const Column& column(std::string_view name) const;
  // Throws ConfigError for unknown class names.
  ClassCode class_code(std::string_view class_name) const;

  // Checks every structural invariant; throws DataError on violation.
  void validate() const;
};

struct LoadOptions {
  CsvOptions csv;
  // Label column name; the last column when unset.
  std::optional<std::string> label;
  // Load every column as a feature.
  bool unlabelled = false;
  std::vector<std::string> missing_tokens = {"", "?", "NA"};
  std::map<std::string, ColumnKind> kind_hints;
  // Explicit value order for ordinal columns; unlisted values follow in
  // lexicographic order.
  std::map<std::string, std::vector<std::string>> ordinal_orders;
  // Extra patterns tried before the ISO defaults.
  std::vector<std::string> datetime_patterns;
};

struct InferredKind {
  ColumnKind kind = ColumnKind::kNominal;
  std::string datetime_pattern;
};

// Per-column kind from raw cells (one inner vector per column). Numeric
// wins over datetime, datetime over boolean; symbolic-nominal otherwise.
std::vector<InferredKind> infer_kinds(
    const std::vector<std::vector<std::string>>& columns,
    const std::vector<std::string>& missing_tokens,
    const std::vector<std::string>& datetime_patterns);

Dataset dataset_from_table(const CsvTable& table, const LoadOptions& options);
Dataset load_csv(const std::filesystem::path& path,
                 const LoadOptions& options = {});

// Rows of `ds` in the given order, dictionaries compacted to the values
// that still occur. Class codes are kept.
Dataset subset(const Dataset& ds, std::span<const RowId> rows);

// Decoded table (header first); missing cells are written as
// `missing_token`.
CsvTable to_table(const Dataset& ds, std::string_view missing_token = "");

RowIds all_rows(const Dataset& ds);

struct CategoryProfile {
  std::string value;  // "(missing)" for the sentinel
  std::size_t count = 0;
  std::vector<double> class_rates;
};

struct ColumnProfile {
  std::string column;
  ColumnKind kind = ColumnKind::kNominal;
  std::size_t unique_values = 0;
  // Empty when the column has more categories than the profile limit.
  std::vector<CategoryProfile> categories;
};

struct ProfileReport {
  std::size_t row_count = 0;
  std::vector<std::string> class_names;
  std::vector<double> prevalence;
  std::vector<ColumnProfile> columns;
};

// Class rates per category. Columns with more than `max_categories`
// distinct values are summarized by their unique count only.
ProfileReport profile(const Dataset& ds, std::size_t max_categories = 32);

}  // namespace treeclust

#endif  // TREECLUST_DATASET_H_
