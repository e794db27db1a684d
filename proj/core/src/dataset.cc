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

#include "treeclust/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>
#include <utility>

#include "treeclust/datetime.h"
#include "util.h"

namespace treeclust {
namespace {

bool is_missing(std::string_view cell, const std::vector<std::string>& tokens) {
  return std::find(tokens.begin(), tokens.end(), cell) != tokens.end();
}

bool is_boolean_text(std::string_view cell) {
  std::string lower;
  for (char c : cell) lower.push_back(static_cast<char>(std::tolower(c)));
  return lower == "true" || lower == "false" || lower == "0" || lower == "1";
}

std::optional<std::string> matching_pattern(
    const std::vector<std::string_view>& cells,
    const std::vector<std::string>& patterns) {
  for (const auto& pattern : patterns) {
    const bool all = std::all_of(cells.begin(), cells.end(), [&](auto cell) {
      return parse_datetime(cell, pattern).has_value();
    });
    if (all) return pattern;
  }
  return std::nullopt;
}

std::vector<std::string> all_patterns(const LoadOptions& options) {
  std::vector<std::string> patterns = options.datetime_patterns;
  for (const auto& p : default_datetime_patterns()) patterns.push_back(p);
  return patterns;
}

// Codes ordered by a natural value; cells with an equal value share a code
// and the dictionary keeps the first text seen for it.
Column build_valued_column(std::string name, ColumnKind kind,
                           const std::vector<std::string_view>& cells,
                           const std::vector<bool>& missing,
                           const std::function<double(std::string_view)>& parse) {
  Column col;
  col.name = std::move(name);
  col.kind = kind;
  std::vector<double> row_values(cells.size());
  std::map<double, std::string> first_text;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    if (missing[r]) continue;
    row_values[r] = parse(cells[r]);
    first_text.try_emplace(row_values[r], std::string(cells[r]));
  }
  std::unordered_map<double, Code> code_of;
  for (const auto& [value, text] : first_text) {
    col.values.push_back(value);
    col.dictionary.push_back(text);
    code_of.emplace(value, static_cast<Code>(col.values.size()));
  }
  col.codes.resize(cells.size(), kMissingCode);
  for (std::size_t r = 0; r < cells.size(); ++r) {
    if (!missing[r]) col.codes[r] = code_of.at(row_values[r]);
  }
  return col;
}

Column build_symbolic_column(std::string name, ColumnKind kind,
                             const std::vector<std::string_view>& cells,
                             const std::vector<bool>& missing,
                             const std::vector<std::string>* order) {
  Column col;
  col.name = std::move(name);
  col.kind = kind;
  std::set<std::string, std::less<>> distinct;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    if (!missing[r]) distinct.emplace(cells[r]);
  }
  if (order) {
    for (const auto& v : *order) {
      if (distinct.erase(v)) col.dictionary.push_back(v);
    }
  }
  for (const auto& v : distinct) col.dictionary.push_back(v);
  std::unordered_map<std::string_view, Code> code_of;
  for (std::size_t i = 0; i < col.dictionary.size(); ++i) {
    code_of.emplace(col.dictionary[i], static_cast<Code>(i + 1));
  }
  col.codes.resize(cells.size(), kMissingCode);
  for (std::size_t r = 0; r < cells.size(); ++r) {
    if (!missing[r]) col.codes[r] = code_of.at(cells[r]);
  }
  return col;
}

}  // namespace

std::string_view to_string(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::kNumeric: return "numeric";
    case ColumnKind::kNominal: return "symbolic-nominal";
    case ColumnKind::kOrdinal: return "symbolic-ordinal";
    case ColumnKind::kDatetime: return "datetime";
    case ColumnKind::kBoolean: return "boolean";
  }
  return "?";
}

std::optional<ColumnKind> parse_column_kind(std::string_view text) {
  if (text == "numeric") return ColumnKind::kNumeric;
  if (text == "nominal" || text == "symbolic-nominal") return ColumnKind::kNominal;
  if (text == "ordinal" || text == "symbolic-ordinal") return ColumnKind::kOrdinal;
  if (text == "datetime") return ColumnKind::kDatetime;
  if (text == "boolean") return ColumnKind::kBoolean;
  return std::nullopt;
}

std::size_t Dataset::row_count() const {
  if (!columns.empty()) return columns.front().codes.size();
  return labels.size();
}

std::optional<std::size_t> Dataset::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == name) return i;
  }
  return std::nullopt;
}

const Column& Dataset::column(std::string_view name) const {
  const auto index = column_index(name);
  if (!index) throw ConfigError("unknown column '" + std::string(name) + "'");
  return columns[*index];
}

ClassCode Dataset::class_code(std::string_view class_name) const {
  for (std::size_t c = 0; c < class_names.size(); ++c) {
    if (class_names[c] == class_name) return static_cast<ClassCode>(c);
  }
  throw ConfigError("unknown class '" + std::string(class_name) + "'");
}

void Dataset::validate() const {
  const std::size_t n = row_count();
  for (const auto& col : columns) {
    if (col.codes.size() != n) {
      throw DataError("column '" + col.name + "' has " +
                      std::to_string(col.codes.size()) + " rows, expected " +
                      std::to_string(n));
    }
    if (has_natural_values(col.kind)) {
      if (col.values.size() != col.dictionary.size()) {
        throw DataError("column '" + col.name + "' lacks natural values");
      }
      if (!std::is_sorted(col.values.begin(), col.values.end())) {
        throw DataError("column '" + col.name + "' values are not ascending");
      }
    }
    for (Code code : col.codes) {
      if (code > col.cardinality()) {
        throw DataError("column '" + col.name + "' has an out-of-range code");
      }
    }
  }
  if (labelled()) {
    if (labels.size() != n) throw DataError("label count differs from rows");
    for (ClassCode c : labels) {
      if (c >= class_names.size()) throw DataError("label code out of range");
    }
  } else if (!labels.empty()) {
    throw DataError("labels without class names");
  }
}

std::vector<InferredKind> infer_kinds(
    const std::vector<std::vector<std::string>>& columns,
    const std::vector<std::string>& missing_tokens,
    const std::vector<std::string>& datetime_patterns) {
  std::vector<InferredKind> kinds;
  kinds.reserve(columns.size());
  for (const auto& cells : columns) {
    std::vector<std::string_view> present;
    for (const auto& cell : cells) {
      if (!is_missing(cell, missing_tokens)) present.push_back(cell);
    }
    InferredKind kind;
    if (present.empty()) {
      kinds.push_back(kind);
      continue;
    }
    if (std::all_of(present.begin(), present.end(),
                    [](auto c) { return parse_number(c).has_value(); })) {
      kind.kind = ColumnKind::kNumeric;
    } else if (auto pattern = matching_pattern(present, datetime_patterns)) {
      kind.kind = ColumnKind::kDatetime;
      kind.datetime_pattern = *pattern;
    } else if (std::all_of(present.begin(), present.end(), is_boolean_text)) {
      kind.kind = ColumnKind::kBoolean;
    }
    kinds.push_back(kind);
  }
  return kinds;
}

Dataset dataset_from_table(const CsvTable& table, const LoadOptions& options) {
  if (table.empty()) throw DataError("empty input: no header row");
  const CsvRow& header = table.front();
  const std::size_t width = header.size();
  if (table.size() == 1) throw DataError("no data rows");
  for (std::size_t r = 1; r < table.size(); ++r) {
    if (table[r].size() != width) {
      throw DataError("data row " + std::to_string(r) + " has " +
                      std::to_string(table[r].size()) + " fields, header has " +
                      std::to_string(width));
    }
  }
  {
    std::set<std::string_view> names;
    for (const auto& name : header) {
      if (!names.insert(name).second) {
        throw DataError("duplicate column name '" + name + "'");
      }
    }
  }

  std::optional<std::size_t> label_index;
  if (!options.unlabelled) {
    if (options.label) {
      const auto it = std::find(header.begin(), header.end(), *options.label);
      if (it == header.end()) {
        throw ConfigError("label column '" + *options.label + "' not found");
      }
      label_index = static_cast<std::size_t>(it - header.begin());
    } else {
      label_index = width - 1;
    }
  }
  for (const auto& [name, kind] : options.kind_hints) {
    if (std::find(header.begin(), header.end(), name) == header.end()) {
      throw ConfigError("kind hint for unknown column '" + name + "'");
    }
  }
  for (const auto& [name, order] : options.ordinal_orders) {
    if (std::find(header.begin(), header.end(), name) == header.end()) {
      throw ConfigError("ordinal order for unknown column '" + name + "'");
    }
  }

  const std::size_t rows = table.size() - 1;
  if (rows > std::numeric_limits<RowId>::max()) {
    throw DataError("too many rows");
  }
  const auto patterns = all_patterns(options);

  Dataset ds;
  for (std::size_t c = 0; c < width; ++c) {
    std::vector<std::string_view> cells(rows);
    std::vector<bool> missing(rows);
    std::size_t missing_count = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      cells[r] = table[r + 1][c];
      missing[r] = is_missing(cells[r], options.missing_tokens);
      missing_count += missing[r];
    }

    if (label_index && c == *label_index) {
      ds.label_name = header[c];
      if (missing_count == rows) {
        throw DataError("label column '" + header[c] + "' is entirely missing");
      }
      if (missing_count) {
        for (std::size_t r = 0; r < rows; ++r) {
          if (missing[r]) {
            throw DataError("label missing on data row " + std::to_string(r + 1));
          }
        }
      }
      std::set<std::string, std::less<>> distinct(cells.begin(), cells.end());
      std::vector<std::string> names(distinct.begin(), distinct.end());
      const bool numeric = std::all_of(names.begin(), names.end(), [](auto& s) {
        return parse_number(s).has_value();
      });
      if (numeric) {
        std::stable_sort(names.begin(), names.end(), [](auto& a, auto& b) {
          return *parse_number(a) < *parse_number(b);
        });
      }
      std::unordered_map<std::string_view, ClassCode> code_of;
      for (std::size_t i = 0; i < names.size(); ++i) {
        code_of.emplace(names[i], static_cast<ClassCode>(i));
      }
      ds.labels.resize(rows);
      for (std::size_t r = 0; r < rows; ++r) ds.labels[r] = code_of.at(cells[r]);
      ds.class_names = std::move(names);
      continue;
    }

    InferredKind inferred;
    const auto hint = options.kind_hints.find(header[c]);
    if (hint == options.kind_hints.end()) {
      std::vector<std::vector<std::string>> one(1);
      one[0].assign(cells.begin(), cells.end());
      inferred = infer_kinds(one, options.missing_tokens, patterns).front();
    } else {
      inferred.kind = hint->second;
      if (inferred.kind == ColumnKind::kDatetime) {
        std::vector<std::string_view> present;
        for (std::size_t r = 0; r < rows; ++r) {
          if (!missing[r]) present.push_back(cells[r]);
        }
        const auto pattern = matching_pattern(present, patterns);
        if (!pattern) {
          throw DataError("column '" + header[c] +
                          "' has values matching no datetime pattern");
        }
        inferred.datetime_pattern = *pattern;
      }
    }

    Column col;
    switch (inferred.kind) {
      case ColumnKind::kNumeric:
        col = build_valued_column(header[c], inferred.kind, cells, missing,
                                  [&](std::string_view s) {
                                    const auto v = parse_number(s);
                                    if (!v) {
                                      throw DataError("column '" + header[c] +
                                                      "': '" + std::string(s) +
                                                      "' is not a number");
                                    }
                                    return *v;
                                  });
        break;
      case ColumnKind::kDatetime:
        col = build_valued_column(
            header[c], inferred.kind, cells, missing, [&](std::string_view s) {
              return static_cast<double>(
                  *parse_datetime(s, inferred.datetime_pattern));
            });
        col.datetime_pattern = inferred.datetime_pattern;
        break;
      default: {
        const auto order = options.ordinal_orders.find(header[c]);
        col = build_symbolic_column(
            header[c], inferred.kind, cells, missing,
            order == options.ordinal_orders.end() ? nullptr : &order->second);
      }
    }
    ds.columns.push_back(std::move(col));
  }
  ds.validate();
  return ds;
}

Dataset load_csv(const std::filesystem::path& path, const LoadOptions& options) {
  return dataset_from_table(read_csv_file(path, options.csv), options);
}

Dataset subset(const Dataset& ds, std::span<const RowId> rows) {
  Dataset out;
  out.label_name = ds.label_name;
  out.class_names = ds.class_names;
  if (ds.labelled()) {
    out.labels.reserve(rows.size());
    for (RowId r : rows) out.labels.push_back(ds.labels.at(r));
  }
  for (const auto& col : ds.columns) {
    std::vector<char> used(col.cardinality() + 1, 0);
    for (RowId r : rows) used[col.codes.at(r)] = 1;
    std::vector<Code> remap(col.cardinality() + 1, kMissingCode);
    Column sub;
    sub.name = col.name;
    sub.kind = col.kind;
    sub.datetime_pattern = col.datetime_pattern;
    for (Code code = 1; code <= col.cardinality(); ++code) {
      if (!used[code]) continue;
      sub.dictionary.push_back(col.dictionary[code - 1]);
      if (!col.values.empty()) sub.values.push_back(col.values[code - 1]);
      remap[code] = static_cast<Code>(sub.dictionary.size());
    }
    sub.codes.reserve(rows.size());
    for (RowId r : rows) sub.codes.push_back(remap[col.codes[r]]);
    out.columns.push_back(std::move(sub));
  }
  return out;
}

CsvTable to_table(const Dataset& ds, std::string_view missing_token) {
  CsvTable table;
  CsvRow header;
  for (const auto& col : ds.columns) header.push_back(col.name);
  if (ds.labelled()) header.push_back(ds.label_name);
  table.push_back(std::move(header));
  for (std::size_t r = 0; r < ds.row_count(); ++r) {
    CsvRow row;
    for (const auto& col : ds.columns) {
      const Code code = col.codes[r];
      row.push_back(code == kMissingCode ? std::string(missing_token)
                                         : col.decode(code));
    }
    if (ds.labelled()) row.push_back(ds.class_names[ds.labels[r]]);
    table.push_back(std::move(row));
  }
  return table;
}

RowIds all_rows(const Dataset& ds) {
  RowIds rows(ds.row_count());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = static_cast<RowId>(i);
  return rows;
}

ProfileReport profile(const Dataset& ds, std::size_t max_categories) {
  ProfileReport report;
  report.row_count = ds.row_count();
  report.class_names = ds.class_names;
  const std::size_t k = ds.class_count();
  report.prevalence.assign(k, 0.0);
  if (k == 0 || report.row_count == 0) return report;
  for (ClassCode c : ds.labels) report.prevalence[c] += 1;
  for (auto& p : report.prevalence) p /= static_cast<double>(report.row_count);

  for (const auto& col : ds.columns) {
    ColumnProfile cp;
    cp.column = col.name;
    cp.kind = col.kind;
    cp.unique_values = col.cardinality();
    std::vector<std::size_t> counts((col.cardinality() + 1) * k, 0);
    for (std::size_t r = 0; r < ds.row_count(); ++r) {
      ++counts[col.codes[r] * k + ds.labels[r]];
    }
    std::size_t present = 0;
    for (Code code = 0; code <= col.cardinality(); ++code) {
      std::size_t total = 0;
      for (std::size_t c = 0; c < k; ++c) total += counts[code * k + c];
      present += total > 0;
    }
    if (present <= max_categories) {
      for (Code code = 0; code <= col.cardinality(); ++code) {
        CategoryProfile cat;
        cat.value = code == kMissingCode ? "(missing)" : col.decode(code);
        for (std::size_t c = 0; c < k; ++c) cat.count += counts[code * k + c];
        if (cat.count == 0) continue;
        for (std::size_t c = 0; c < k; ++c) {
          cat.class_rates.push_back(static_cast<double>(counts[code * k + c]) /
                                    static_cast<double>(cat.count));
        }
        cp.categories.push_back(std::move(cat));
      }
    }
    report.columns.push_back(std::move(cp));
  }
  return report;
}

}  // namespace treeclust
