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

#include <gtest/gtest.h>

#include "../support/manual_tree.h"
#include "treeclust/preprocess.h"
#include "treeclust/rule.h"

namespace treeclust {
namespace {

using testing::manual_tree;
constexpr auto kLe = SplitOperator::kOrdinal;
constexpr auto kEq = SplitOperator::kNominal;

Dataset numbers() {
  CsvTable t{{"x", "y"}};
  const char* xs[] = {"1", "2", "3", "4", "5", "6", ""};
  for (int i = 0; i < 7; ++i) t.push_back({xs[i], i % 2 ? "p" : "n"});
  return dataset_from_table(t, {});
}

TEST(Linearize, IntervalsMergeAndMissingFollowsTheSplit) {
  const auto ds = numbers();
  const auto log = identity_transforms(ds);
  // Root: x <= 4; node 1: x <= 1.
  const auto tree = manual_tree(ds, {SplitTest{0, 4, kLe}, SplitTest{0, 1, kLe}});
  ASSERT_EQ(tree.size(), 5u);

  const Rule root = linearize_rule(tree, 0, log, ds);
  EXPECT_TRUE(root.empty());

  const Rule between = linearize_rule(tree, 4, log, ds);
  ASSERT_EQ(between.predicates.size(), 1u);
  EXPECT_EQ(between.predicates[0].op, PredicateOp::kBetween);
  EXPECT_EQ(render_predicate(between.predicates[0]), "1 < x <= 4");

  const Rule low = linearize_rule(tree, 3, log, ds);
  EXPECT_EQ(render_predicate(low.predicates.at(0)), "(x <= 1 or x is missing)");

  const Rule high = linearize_rule(tree, 2, log, ds);
  EXPECT_EQ(render_predicate(high.predicates.at(0)), "x > 4");

  for (NodeId id = 0; id < static_cast<NodeId>(tree.size()); ++id) {
    EXPECT_EQ(apply_rule(linearize_rule(tree, id, log, ds), ds), tree.node(id).rows)
        << "node " << id;
  }
}

TEST(Linearize, MissingPivotExcludesOnlyMissing) {
  const auto ds = numbers();
  const auto tree = manual_tree(ds, {SplitTest{0, kMissingCode, kLe}});
  const auto log = identity_transforms(ds);
  EXPECT_EQ(render_predicate(linearize_rule(tree, 1, log, ds).predicates.at(0)),
            "x is missing");
  EXPECT_EQ(render_predicate(linearize_rule(tree, 2, log, ds).predicates.at(0)),
            "x is not missing");
}

Dataset countries() {
  CsvTable t{{"country", "y"}};
  const char* cs[] = {"US", "US", "US", "CA", "MX", "FR", "DE", ""};
  const char* ys[] = {"p", "p", "p", "n", "n", "p", "n", "n"};
  for (int i = 0; i < 8; ++i) t.push_back({cs[i], ys[i]});
  return dataset_from_table(t, {});
}

TEST(Linearize, NominalEqualityAndComplementRendering) {
  const auto ds = countries();
  const auto log = identity_transforms(ds);
  const Code us = 5;  // CA DE FR MX US
  ASSERT_EQ(ds.columns[0].decode(us), "US");
  const auto tree = manual_tree(ds, {SplitTest{0, us, kEq}});
  const Rule in = linearize_rule(tree, 1, log, ds);
  EXPECT_EQ(in.predicates.at(0).op, PredicateOp::kEqual);
  EXPECT_EQ(render_predicate(in.predicates.at(0)), "country = US");
  const Rule out = linearize_rule(tree, 2, log, ds);
  EXPECT_EQ(out.predicates.at(0).op, PredicateOp::kNotEqual);
  EXPECT_EQ(render_predicate(out.predicates.at(0)), "country != US");
  EXPECT_TRUE(out.predicates[0].matches_missing);
  EXPECT_EQ(apply_rule(out, ds), tree.node(2).rows);
}

TEST(Linearize, NoMissingMentionWithoutMissingCells) {
  CsvTable t{{"sex", "age", "y"}};
  const char* rows[][3] = {{"f", "10", "p"}, {"m", "20", "n"}, {"f", "30", "p"},
                           {"m", "40", "n"}, {"f", "50", "n"}};
  for (auto& r : rows) t.push_back({r[0], r[1], r[2]});
  const auto ds = dataset_from_table(t, {});
  const auto log = identity_transforms(ds);
  // Ordinal tests put missing on the left; with no missing cells it is dropped.
  const auto tree = manual_tree(ds, {SplitTest{1, 2, SplitOperator::kOrdinal}});
  const Rule left = linearize_rule(tree, 1, log, ds);
  EXPECT_EQ(render_predicate(left.predicates.at(0)), "age <= 20");
  EXPECT_FALSE(left.predicates[0].matches_missing);
  EXPECT_EQ(apply_rule(left, ds), tree.node(1).rows);
}

TEST(Linearize, ReorderedOrdinalThresholdExpandsToOriginalValues) {
  const auto ds = countries();
  const auto prepared = prepare(ds, {}, 1);
  const Column& w = prepared.working.columns[0];
  // Frequency order for class p: FR (1/1), US (3/3), then CA, DE, MX.
  ASSERT_EQ(w.dictionary, (std::vector<std::string>{"FR", "US", "CA", "DE", "MX"}));
  const auto tree = manual_tree(prepared.working, {SplitTest{0, 2, kLe}});
  const Rule high = linearize_rule(tree, 2, prepared.log, prepared.source);
  ASSERT_EQ(high.predicates.size(), 1u);
  // {CA, DE, MX} is rendered through its smaller complement.
  EXPECT_EQ(high.predicates[0].op, PredicateOp::kNotIn);
  EXPECT_EQ(high.predicates[0].values, (std::vector<std::string>{"FR", "US"}));
  EXPECT_FALSE(high.predicates[0].matches_missing);
  EXPECT_EQ(render_predicate(high.predicates[0]),
            "country is not in {FR, US} and country is not missing");
  const Rule low = linearize_rule(tree, 1, prepared.log, prepared.source);
  EXPECT_EQ(render_predicate(low.predicates.at(0)),
            "(country in {FR, US} or country is missing)");
  EXPECT_EQ(apply_rule(high, prepared.source), tree.node(2).rows);
  EXPECT_EQ(apply_rule(low, prepared.source), tree.node(1).rows);
}

TEST(Linearize, SameAttributeConditionsIntersect) {
  const auto ds = countries();
  const auto log = identity_transforms(ds);
  // country != US, then country != CA.
  const auto tree = manual_tree(ds, {SplitTest{0, 5, kEq}, std::nullopt,
                                     SplitTest{0, 1, kEq}});
  const Rule r = linearize_rule(tree, 4, log, ds);
  ASSERT_EQ(r.predicates.size(), 1u);
  EXPECT_EQ(render_predicate(r.predicates[0]), "country is not in {CA, US}");
}

TEST(Linearize, BinnedNumericUsesObservedBounds) {
  const auto ds = numbers();
  PreprocessConfig c;
  c.numeric_bins = 3;
  const auto p = prepare(ds, c, 1);
  // Bins (..2], (2..4], (4..6].
  ASSERT_EQ(p.working.columns[0].cardinality(), 3u);
  const auto tree = manual_tree(p.working, {SplitTest{0, 1, kLe}});
  const Rule r = linearize_rule(tree, 2, p.log, p.source);
  EXPECT_EQ(render_predicate(r.predicates.at(0)), "x > 2");
}

TEST(Linearize, MissingTransformRecordIsConfigError) {
  const auto ds = numbers();
  const auto tree = manual_tree(ds, {SplitTest{0, 4, kLe}});
  TransformLog empty;
  EXPECT_THROW(linearize_rule(tree, 1, empty, ds), ConfigError);
}

TEST(ApplyRule, EmptyRuleSelectsAllAndUniverseRestricts) {
  const auto ds = numbers();
  EXPECT_EQ(apply_rule(Rule{}, ds), all_rows(ds));
  const RowIds universe{1, 3};
  EXPECT_EQ(apply_rule(Rule{}, ds, universe), universe);
}

TEST(ApplyRule, UnknownAttributeIsConfigError) {
  Rule r;
  Predicate p;
  p.attribute = "nope";
  r.predicates.push_back(p);
  EXPECT_THROW(apply_rule(r, numbers()), ConfigError);
}

TEST(Satisfies, SetOperatorsOnNumericCompareByValue) {
  const auto ds = numbers();
  Predicate p;
  p.attribute = "x";
  p.op = PredicateOp::kIn;
  p.values = {"2.0", "5"};
  const RowIds got = apply_rule(Rule{{p}, 0}, ds);
  EXPECT_EQ(got, (RowIds{1, 4}));
  p.op = PredicateOp::kNotEqual;
  p.values = {"1"};
  p.matches_missing = false;
  EXPECT_EQ(apply_rule(Rule{{p}, 0}, ds), (RowIds{1, 2, 3, 4, 5}));
}

TEST(Satisfies, IntervalOnSymbolicIsConfigError) {
  const auto ds = countries();
  Predicate p;
  p.attribute = "country";
  p.op = PredicateOp::kLessEqual;
  p.upper = 1;
  EXPECT_THROW(satisfies(p, ds.columns[0], 1), ConfigError);
}

TEST(Render, AllOperators) {
  Predicate p;
  p.attribute = "a";
  p.op = PredicateOp::kEqual;
  p.values = {"v"};
  EXPECT_EQ(render_predicate(p), "a = v");
  p.op = PredicateOp::kNotEqual;
  p.matches_missing = true;
  EXPECT_EQ(render_predicate(p), "a != v");
  p.matches_missing = false;
  EXPECT_EQ(render_predicate(p), "a != v and a is not missing");
  p.op = PredicateOp::kIsMissing;
  p.matches_missing = true;
  EXPECT_EQ(render_predicate(p), "a is missing");
}

TEST(PredicateOp, NamesRoundTrip) {
  for (auto op : {PredicateOp::kLessEqual, PredicateOp::kGreater, PredicateOp::kBetween,
                  PredicateOp::kEqual, PredicateOp::kNotEqual, PredicateOp::kIn,
                  PredicateOp::kNotIn, PredicateOp::kIsMissing,
                  PredicateOp::kNotMissing}) {
    EXPECT_EQ(parse_predicate_op(to_string(op)), op);
  }
  EXPECT_EQ(parse_predicate_op("∉"), PredicateOp::kNotIn);
  EXPECT_FALSE(parse_predicate_op("~"));
}

}  // namespace
}  // namespace treeclust
