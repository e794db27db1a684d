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

#ifndef TREECLUST_RULE_H_
#define TREECLUST_RULE_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treeclust/dataset.h"
#include "treeclust/preprocess.h"
#include "treeclust/tree.h"
#include "treeclust/types.h"

namespace treeclust {

enum class PredicateOp {
  kLessEqual,  // x <= upper
  kGreater,    // x > lower
  kBetween,    // lower < x <= upper
  kEqual,      // x == values[0]
  kNotEqual,   // x != values[0]
  kIn,         // x in values
  kNotIn,      // x not in values
  kIsMissing,
  kNotMissing,
};

std::string_view to_string(PredicateOp op);
std::optional<PredicateOp> parse_predicate_op(std::string_view text);

// A test on one attribute, over original (pre-binning, pre-encoding)
// values. A missing cell satisfies the predicate iff matches_missing.
struct Predicate {
  std::string attribute;
  PredicateOp op = PredicateOp::kIn;
  std::optional<double> lower;
  std::optional<double> upper;
  // Display text for the bounds.
  std::string lower_text;
  std::string upper_text;
  std::vector<std::string> values;
  bool matches_missing = false;

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

struct Rule {
  std::vector<Predicate> predicates;
  ClassCode target_class = 0;

  bool empty() const { return predicates.empty(); }
  friend bool operator==(const Rule&, const Rule&) = default;
};

// Whether a cell holding `code` of `column` satisfies `predicate`.
// Throws ConfigError if the predicate cannot apply to the column kind.
bool satisfies(const Predicate& predicate, const Column& column, Code code);

// Conjunction of the conditions on the path from the root to `node_id`,
// expressed over the source dataset. Conditions on one attribute are
// intersected into a single predicate; numeric and datetime attributes
// become intervals, symbolic ones value sets (rendered as the complement
// when that is strictly smaller). Throws ConfigError if the log has no
// record for a path attribute.
Rule linearize_rule(const DecisionTree& tree, NodeId node_id,
                    const TransformLog& log, const Dataset& source);

// The predicate a single split side imposes, same conventions as above.
Predicate split_predicate(const SplitTest& test, bool left_side,
                          const TransformLog& log, const Dataset& source);

// Rows (ascending) of `universe` that satisfy every predicate; all rows when
// `universe` is omitted. Throws ConfigError for unknown attributes.
RowIds apply_rule(const Rule& rule, const Dataset& ds);
RowIds apply_rule(const Rule& rule, const Dataset& ds,
                  std::span<const RowId> universe);

// "age <= 30", "country is not in {US, CA}", "(fare > 7.5 or fare is
// missing)".
std::string render_predicate(const Predicate& predicate);

}  // namespace treeclust

#endif  // TREECLUST_RULE_H_
