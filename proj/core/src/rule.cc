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

#include "treeclust/rule.h"

#include <algorithm>
#include <map>

#include "treeclust/datetime.h"
#include "util.h"

namespace treeclust {
namespace {

std::string join_values(const std::vector<std::string>& values) {
  std::string out = "{";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += values[i];
  }
  return out + "}";
}

bool naturally_matches_missing(PredicateOp op) {
  return op == PredicateOp::kNotEqual || op == PredicateOp::kNotIn ||
         op == PredicateOp::kIsMissing;
}

const ColumnTransform& transform_for(const TransformLog& log,
                                     std::size_t attribute) {
  if (attribute >= log.columns.size()) {
    throw ConfigError("no transform record for working column " +
                      std::to_string(attribute));
  }
  return log.columns[attribute];
}

// Restricts `allowed` (indexed by source code) to the source codes whose
// working code lands on the requested side of `test`.
void restrict_by(const SplitTest& test, bool left_side,
                 const ColumnTransform& transform, std::vector<char>& allowed) {
  for (std::size_t c = 0; c < allowed.size(); ++c) {
    const Code working = transform.code_map.at(c);
    if (test.goes_left(working) != left_side) allowed[c] = 0;
  }
}

// Predicate selecting exactly the allowed source codes, or nullopt when
// every cell qualifies.
std::optional<Predicate> predicate_for(const Column& column,
                                       const std::vector<char>& allowed) {
  Predicate p;
  p.attribute = column.name;
  // Without missing cells the missing flag is free; keep the natural one.
  const bool has_missing = std::find(column.codes.begin(), column.codes.end(),
                                     kMissingCode) != column.codes.end();
  const bool want_missing = allowed[kMissingCode] != 0;
  const auto m = static_cast<Code>(column.cardinality());
  std::vector<Code> included;
  std::vector<Code> excluded;
  for (Code c = 1; c <= m; ++c) (allowed[c] ? included : excluded).push_back(c);

  if (excluded.empty()) {
    if (want_missing || !has_missing) return std::nullopt;
    p.op = PredicateOp::kNotMissing;
    return p;
  }
  if (included.empty()) {
    p.op = want_missing ? PredicateOp::kIsMissing : PredicateOp::kIn;
    p.matches_missing = want_missing;
    return p;
  }
  const bool contiguous =
      included.back() - included.front() + 1 == included.size();
  if (has_natural_values(column.kind) && contiguous) {
    const Code first = included.front();
    const Code last = included.back();
    if (first > 1) {
      p.lower = column.value_of(first - 1);
      p.lower_text = column.decode(first - 1);
    }
    if (last < m) {
      p.upper = column.value_of(last);
      p.upper_text = column.decode(last);
    }
    p.op = p.lower && p.upper ? PredicateOp::kBetween
           : p.upper          ? PredicateOp::kLessEqual
                              : PredicateOp::kGreater;
  } else {
    const bool negate = excluded.size() < included.size();
    const auto& listed = negate ? excluded : included;
    if (listed.size() == 1) {
      p.op = negate ? PredicateOp::kNotEqual : PredicateOp::kEqual;
    } else {
      p.op = negate ? PredicateOp::kNotIn : PredicateOp::kIn;
    }
    for (Code c : listed) p.values.push_back(column.decode(c));
  }
  p.matches_missing = has_missing ? want_missing : naturally_matches_missing(p.op);
  return p;
}

// Per-code truth table of a predicate over one column.
std::vector<char> truth_table(const Predicate& predicate, const Column& column) {
  std::vector<char> table(column.cardinality() + 1);
  for (Code c = 0; c <= column.cardinality(); ++c) {
    table[c] = satisfies(predicate, column, c);
  }
  return table;
}

bool value_listed(const Predicate& predicate, const Column& column, Code code) {
  if (column.kind == ColumnKind::kNumeric) {
    const double x = column.value_of(code);
    return std::any_of(predicate.values.begin(), predicate.values.end(),
                       [&](const std::string& v) {
                         const auto parsed = parse_number(v);
                         return parsed && *parsed == x;
                       });
  }
  if (column.kind == ColumnKind::kDatetime) {
    const double x = column.value_of(code);
    return std::any_of(predicate.values.begin(), predicate.values.end(),
                       [&](const std::string& v) {
                         const auto parsed = parse_datetime(v, column.datetime_pattern);
                         return parsed && static_cast<double>(*parsed) == x;
                       });
  }
  const std::string& text = column.decode(code);
  return std::find(predicate.values.begin(), predicate.values.end(), text) !=
         predicate.values.end();
}

}  // namespace

std::string_view to_string(PredicateOp op) {
  switch (op) {
    case PredicateOp::kLessEqual: return "<=";
    case PredicateOp::kGreater: return ">";
    case PredicateOp::kBetween: return "between";
    case PredicateOp::kEqual: return "=";
    case PredicateOp::kNotEqual: return "!=";
    case PredicateOp::kIn: return "in";
    case PredicateOp::kNotIn: return "not in";
    case PredicateOp::kIsMissing: return "is missing";
    case PredicateOp::kNotMissing: return "not missing";
  }
  return "?";
}

std::optional<PredicateOp> parse_predicate_op(std::string_view text) {
  for (auto op : {PredicateOp::kLessEqual, PredicateOp::kGreater,
                  PredicateOp::kBetween, PredicateOp::kEqual,
                  PredicateOp::kNotEqual, PredicateOp::kIn, PredicateOp::kNotIn,
                  PredicateOp::kIsMissing, PredicateOp::kNotMissing}) {
    if (to_string(op) == text) return op;
  }
  if (text == "≤") return PredicateOp::kLessEqual;
  if (text == "≠") return PredicateOp::kNotEqual;
  if (text == "∈") return PredicateOp::kIn;
  if (text == "∉") return PredicateOp::kNotIn;
  return std::nullopt;
}

bool satisfies(const Predicate& predicate, const Column& column, Code code) {
  if (code == kMissingCode) return predicate.matches_missing;
  switch (predicate.op) {
    case PredicateOp::kLessEqual:
    case PredicateOp::kGreater:
    case PredicateOp::kBetween: {
      if (!has_natural_values(column.kind)) {
        throw ConfigError("interval test on non-numeric column '" +
                          column.name + "'");
      }
      const double x = column.value_of(code);
      if (predicate.lower && !(x > *predicate.lower)) return false;
      if (predicate.upper && !(x <= *predicate.upper)) return false;
      return true;
    }
    case PredicateOp::kEqual:
    case PredicateOp::kIn:
      return value_listed(predicate, column, code);
    case PredicateOp::kNotEqual:
    case PredicateOp::kNotIn:
      return !value_listed(predicate, column, code);
    case PredicateOp::kIsMissing:
      return false;
    case PredicateOp::kNotMissing:
      return true;
  }
  return false;
}

Rule linearize_rule(const DecisionTree& tree, NodeId node_id,
                    const TransformLog& log, const Dataset& source) {
  Rule rule;
  const auto path = tree.path_to(node_id);
  std::vector<std::size_t> order;  // source columns by first appearance
  std::map<std::size_t, std::vector<char>> allowed;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const TreeNode& parent = tree.node(path[i]);
    const bool left_side = path[i + 1] == parent.left;
    const ColumnTransform& t = transform_for(log, parent.split->attribute);
    if (t.source_index >= source.columns.size()) {
      throw ConfigError("transform for '" + t.column +
                        "' points outside the source dataset");
    }
    auto [it, inserted] = allowed.try_emplace(
        t.source_index,
        std::vector<char>(source.columns[t.source_index].cardinality() + 1, 1));
    if (inserted) order.push_back(t.source_index);
    restrict_by(*parent.split, left_side, t, it->second);
  }
  for (std::size_t source_index : order) {
    if (auto p = predicate_for(source.columns[source_index], allowed[source_index])) {
      rule.predicates.push_back(std::move(*p));
    }
  }
  return rule;
}

Predicate split_predicate(const SplitTest& test, bool left_side,
                          const TransformLog& log, const Dataset& source) {
  const ColumnTransform& t = transform_for(log, test.attribute);
  const Column& column = source.columns.at(t.source_index);
  std::vector<char> allowed(column.cardinality() + 1, 1);
  restrict_by(test, left_side, t, allowed);
  if (auto p = predicate_for(column, allowed)) return *p;
  Predicate always;
  always.attribute = column.name;
  always.op = PredicateOp::kNotIn;
  always.matches_missing = true;
  return always;
}

RowIds apply_rule(const Rule& rule, const Dataset& ds) {
  const RowIds rows = all_rows(ds);
  return apply_rule(rule, ds, rows);
}

RowIds apply_rule(const Rule& rule, const Dataset& ds,
                  std::span<const RowId> universe) {
  std::vector<std::pair<const Column*, std::vector<char>>> tables;
  for (const auto& predicate : rule.predicates) {
    const Column& column = ds.column(predicate.attribute);
    tables.emplace_back(&column, truth_table(predicate, column));
  }
  RowIds out;
  for (RowId r : universe) {
    const bool ok = std::all_of(tables.begin(), tables.end(), [&](const auto& t) {
      return t.second[t.first->codes.at(r)] != 0;
    });
    if (ok) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string render_predicate(const Predicate& p) {
  const std::string& name = p.attribute;
  std::string base;
  switch (p.op) {
    case PredicateOp::kLessEqual: base = name + " <= " + p.upper_text; break;
    case PredicateOp::kGreater: base = name + " > " + p.lower_text; break;
    case PredicateOp::kBetween:
      base = p.lower_text + " < " + name + " <= " + p.upper_text;
      break;
    case PredicateOp::kEqual:
      base = name + " = " + (p.values.empty() ? "" : p.values.front());
      break;
    case PredicateOp::kNotEqual:
      base = name + " != " + (p.values.empty() ? "" : p.values.front());
      break;
    case PredicateOp::kIn: base = name + " in " + join_values(p.values); break;
    case PredicateOp::kNotIn:
      base = name + " is not in " + join_values(p.values);
      break;
    case PredicateOp::kIsMissing: base = name + " is missing"; break;
    case PredicateOp::kNotMissing: base = name + " is not missing"; break;
  }
  if (p.matches_missing == naturally_matches_missing(p.op)) return base;
  if (p.matches_missing) return "(" + base + " or " + name + " is missing)";
  return base + " and " + name + " is not missing";
}

}  // namespace treeclust
