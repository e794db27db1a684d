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

#include "treeclust/ordinal_encoding.h"

#include <algorithm>
#include <numeric>

namespace treeclust {

ContingencyTable build_contingency(const Column& column,
                                   std::span<const ClassCode> labels,
                                   ClassCode target_class) {
  if (labels.size() != column.codes.size()) {
    throw DataError("label count differs from column '" + column.name + "'");
  }
  ContingencyTable table;
  table.column = column.name;
  table.target_class = target_class;
  table.rows.resize(column.cardinality());
  for (Code c = 1; c <= column.cardinality(); ++c) {
    table.rows[c - 1].code = c;
    table.rows[c - 1].value = column.decode(c);
  }
  for (std::size_t r = 0; r < labels.size(); ++r) {
    const Code code = column.codes[r];
    if (code == kMissingCode) continue;
    auto& row = table.rows[code - 1];
    ++row.total;
    row.in_class += labels[r] == target_class;
  }
  for (auto& row : table.rows) {
    row.frequency = row.total ? static_cast<double>(row.in_class) /
                                    static_cast<double>(row.total)
                              : 0.0;
  }
  return table;
}

EncodedColumn encode_by_class_frequency(const Column& column,
                                        std::span<const ClassCode> labels,
                                        ClassCode target_class) {
  if (!is_symbolic(column.kind) && column.kind != ColumnKind::kBoolean) {
    throw ConfigError("column '" + column.name +
                      "' is not symbolic; class-frequency encoding needs "
                      "symbolic values");
  }
  EncodedColumn out;
  out.table = build_contingency(column, labels, target_class);
  const auto& rows = out.table.rows;

  std::vector<Code> order(column.cardinality());
  std::iota(order.begin(), order.end(), Code{1});
  // Fractions compared by cross-multiplication so equal frequencies tie
  // exactly.
  std::stable_sort(order.begin(), order.end(), [&](Code a, Code b) {
    const auto& ra = rows[a - 1];
    const auto& rb = rows[b - 1];
    return ra.in_class * rb.total > rb.in_class * ra.total;
  });

  out.encoding.column = column.name;
  out.encoding.permutation.assign(column.cardinality() + 1, kMissingCode);
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.encoding.permutation[order[i]] = static_cast<Code>(i + 1);
    out.encoding.order.push_back(column.decode(order[i]));
  }

  out.column.name = column.name;
  out.column.kind = ColumnKind::kOrdinal;
  out.column.dictionary = out.encoding.order;
  out.column.codes.reserve(column.codes.size());
  for (Code code : column.codes) {
    out.column.codes.push_back(out.encoding.permutation[code]);
  }
  return out;
}

std::vector<Code> invert_permutation(std::span<const Code> permutation) {
  std::vector<Code> inverse(permutation.size(), kMissingCode);
  for (std::size_t old = 0; old < permutation.size(); ++old) {
    inverse.at(permutation[old]) = static_cast<Code>(old);
  }
  return inverse;
}

}  // namespace treeclust
