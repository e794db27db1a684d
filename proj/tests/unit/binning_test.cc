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

#include "../oracles/quantile_oracle.h"
#include "../support/generators.h"
#include "treeclust/binning.h"

namespace treeclust {
namespace {

using testing::numeric_dataset;
using testing::symbolic_dataset;

std::vector<std::vector<std::string>> member_texts(const BinnedColumn& b,
                                                   const Column& source) {
  std::vector<std::vector<std::string>> out;
  for (const auto& bin : b.spec.bins) {
    std::vector<std::string> m;
    for (Code c : bin.members) m.push_back(source.decode(c));
    out.push_back(m);
  }
  return out;
}

TEST(NumericBinning, PercentileMatchesSortedRankOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(80);
    const auto values = testing::random_values(rng, n, 1 + rng.below(30));
    const std::size_t k = 2 + rng.below(7);
    const auto ds = numeric_dataset(values);
    const Column& x = ds.columns[0];
    const auto binned = bin_numeric(x, k, BinningMethod::kNumericPercentile);
    const auto edges = oracle::percentile_edges(values, k);
    ASSERT_EQ(binned.spec.bins.size(), edges.size());
    for (std::size_t r = 0; r < n; ++r) {
      const Code got = binned.column.codes[r];
      EXPECT_EQ(got - 1, oracle::percentile_bin(edges, values[r]));
      EXPECT_DOUBLE_EQ(binned.column.value_of(got), edges[got - 1]);
    }
  }
}

TEST(NumericBinning, PercentileWorkedExample) {
  // Ten values, k = 4: edges at ranks 3, 5, 8 and the maximum.
  const auto ds = numeric_dataset({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  const auto b = bin_numeric(ds.columns[0], 4, BinningMethod::kNumericPercentile);
  ASSERT_EQ(b.spec.bins.size(), 4u);
  EXPECT_EQ(b.column.dictionary, (std::vector<std::string>{"3", "5", "8", "10"}));
  EXPECT_TRUE(b.spec.bins[0].interval->lo_closed);
  EXPECT_FALSE(b.spec.bins[1].interval->lo_closed);
  EXPECT_TRUE(b.spec.bins[1].interval->hi_closed);
  EXPECT_EQ(b.column.codes, (std::vector<Code>{1, 1, 1, 2, 2, 3, 3, 3, 4, 4}));
}

TEST(NumericBinning, EqualWidthHalfOpenWithClosedLastBin) {
  const auto ds = numeric_dataset({0, 1, 2, 3.999, 4, 10});
  const auto b = bin_numeric(ds.columns[0], 5, BinningMethod::kNumericEqualWidth);
  // Bins [0,2) [2,4) [4,6) [6,8) [8,10]; [6,8) is empty and dropped.
  ASSERT_EQ(b.spec.bins.size(), 4u);
  EXPECT_EQ(b.column.dictionary, (std::vector<std::string>{"1", "3", "5", "9"}));
  EXPECT_EQ(b.column.codes, (std::vector<Code>{1, 1, 2, 2, 3, 4}));
  EXPECT_TRUE(b.spec.bins.back().interval->hi_closed);
  EXPECT_FALSE(b.spec.bins.front().interval->hi_closed);
}

TEST(NumericBinning, MissingStaysMissingAndConstantColumnIsOneBin) {
  CsvTable t{{"x", "y"}, {"", "a"}, {"5", "b"}, {"5", "a"}};
  const auto ds = dataset_from_table(t, {});
  const auto b = bin_numeric(ds.columns[0], 3, BinningMethod::kNumericPercentile);
  EXPECT_EQ(b.column.codes, (std::vector<Code>{kMissingCode, 1, 1}));
  EXPECT_EQ(b.spec.code_map[kMissingCode], kMissingCode);
  EXPECT_EQ(b.spec.bins.size(), 1u);
}

TEST(NumericBinning, Errors) {
  const auto ds = numeric_dataset({1, 2});
  EXPECT_THROW(bin_numeric(ds.columns[0], 1, BinningMethod::kNumericPercentile),
               ConfigError);
  EXPECT_THROW(bin_numeric(ds.columns[0], 2, BinningMethod::kSymbolicFrequency),
               ConfigError);
  const auto s = symbolic_dataset({"a", "b"}, {"p", "q"});
  EXPECT_THROW(bin_numeric(s.columns[0], 2, BinningMethod::kNumericPercentile),
               ConfigError);
  CsvTable t{{"x", "y"}, {"", "a"}};
  LoadOptions o;
  o.kind_hints["x"] = ColumnKind::kNumeric;
  const auto empty = dataset_from_table(t, o);
  EXPECT_THROW(bin_numeric(empty.columns[0], 2, BinningMethod::kNumericPercentile),
               DataError);
}

TEST(SymbolicBinning, EqualWidthChopsDictionaryOrder) {
  const auto ds = symbolic_dataset({"a", "b", "c", "d", "e", "f"},
                                   {"p", "q", "p", "q", "p", "q"});
  const auto b = bin_symbolic(ds.columns[0], 3, BinningMethod::kSymbolicEqualWidth);
  EXPECT_EQ(member_texts(b, ds.columns[0]),
            (std::vector<std::vector<std::string>>{{"a", "b"}, {"c", "d"}, {"e", "f"}}));
  EXPECT_EQ(b.column.dictionary,
            (std::vector<std::string>{"{a, b}", "{c, d}", "{e, f}"}));
}

TEST(SymbolicBinning, FrequencyPacksFromMostFrequent) {
  std::vector<std::string> v;
  for (int i = 0; i < 5; ++i) v.push_back("a");
  for (int i = 0; i < 3; ++i) v.push_back("b");
  v.push_back("c");
  v.push_back("d");
  const std::vector<std::string> labels(v.size(), "p");
  const auto ds = symbolic_dataset(v, labels);
  const auto k2 = bin_symbolic(ds.columns[0], 2, BinningMethod::kSymbolicFrequency);
  EXPECT_EQ(member_texts(k2, ds.columns[0]),
            (std::vector<std::vector<std::string>>{{"a"}, {"b", "c", "d"}}));
  const auto k3 = bin_symbolic(ds.columns[0], 3, BinningMethod::kSymbolicFrequency);
  EXPECT_EQ(member_texts(k3, ds.columns[0]),
            (std::vector<std::vector<std::string>>{{"a"}, {"b", "c"}, {"d"}}));
}

TEST(SymbolicBinning, SimilarityCutsAtLargestDistances) {
  const auto ds = symbolic_dataset({"alpha", "alpine", "beta", "bet", "gamma"},
                                   {"p", "q", "p", "q", "p"});
  const auto b = bin_symbolic(ds.columns[0], 3, BinningMethod::kSymbolicSimilarity);
  EXPECT_EQ(member_texts(b, ds.columns[0]),
            (std::vector<std::vector<std::string>>{
                {"alpha", "alpine"}, {"bet", "beta"}, {"gamma"}}));
}

TEST(SymbolicBinning, TooManyBinsGivesIdentityAndWarning) {
  const auto ds = symbolic_dataset({"a", "b"}, {"p", "q"});
  const auto b = bin_symbolic(ds.columns[0], 5, BinningMethod::kSymbolicFrequency);
  EXPECT_EQ(b.spec.bins.size(), 2u);
  EXPECT_FALSE(b.spec.warning.empty());
  EXPECT_EQ(b.column.codes, ds.columns[0].codes);
}

TEST(SymbolicBinning, Errors) {
  const auto ds = symbolic_dataset({"a", "b"}, {"p", "q"});
  EXPECT_THROW(bin_symbolic(ds.columns[0], 2, BinningMethod::kNumericPercentile),
               ConfigError);
  const auto one = symbolic_dataset({"a", "a"}, {"p", "q"});
  EXPECT_THROW(bin_symbolic(one.columns[0], 2, BinningMethod::kSymbolicFrequency),
               DataError);
  const auto num = numeric_dataset({1, 2});
  EXPECT_THROW(bin_symbolic(num.columns[0], 2, BinningMethod::kSymbolicFrequency),
               ConfigError);
}

TEST(DatetimeBinning, RepresentativesSpanFirstAndLastMember) {
  CsvTable t{{"d", "y"},          {"2020-01-01", "a"}, {"2020-01-02", "b"},
             {"2020-01-03", "a"}, {"2020-01-04", "b"}};
  const auto ds = dataset_from_table(t, {});
  ASSERT_EQ(ds.columns[0].kind, ColumnKind::kDatetime);
  const auto b = bin_datetime(ds.columns[0], 2, BinningMethod::kDatetimeFrequency);
  EXPECT_EQ(b.column.dictionary,
            (std::vector<std::string>{"[2020-01-01 .. 2020-01-02]",
                                      "[2020-01-03 .. 2020-01-04]"}));
  EXPECT_EQ(b.column.kind, ColumnKind::kDatetime);
  EXPECT_THROW(bin_datetime(ds.columns[0], 2, BinningMethod::kNumericPercentile),
               ConfigError);
}

TEST(Binning, MethodNamesRoundTrip) {
  for (auto m : {BinningMethod::kNumericEqualWidth, BinningMethod::kNumericPercentile,
                 BinningMethod::kSymbolicEqualWidth, BinningMethod::kSymbolicFrequency,
                 BinningMethod::kSymbolicSimilarity, BinningMethod::kDatetimeFrequency,
                 BinningMethod::kDatetimeEqualWidth}) {
    EXPECT_EQ(parse_binning_method(to_string(m)), m);
  }
  EXPECT_FALSE(parse_binning_method("median"));
}

}  // namespace
}  // namespace treeclust
