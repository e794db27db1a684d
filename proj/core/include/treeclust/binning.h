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

#ifndef TREECLUST_BINNING_H_
#define TREECLUST_BINNING_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treeclust/dataset.h"
#include "treeclust/types.h"

namespace treeclust {

enum class BinningMethod {
  kNumericEqualWidth,
  kNumericPercentile,
  kSymbolicEqualWidth,
  kSymbolicFrequency,
  kSymbolicSimilarity,
  kDatetimeFrequency,
  kDatetimeEqualWidth,
};

std::string_view to_string(BinningMethod method);
std::optional<BinningMethod> parse_binning_method(std::string_view text);

struct Interval {
  double lo = 0;
  double hi = 0;
  bool lo_closed = true;
  bool hi_closed = false;

  bool contains(double x) const {
    return (lo_closed ? x >= lo : x > lo) && (hi_closed ? x <= hi : x < hi);
  }
};

struct Bin {
  Code id = 0;
  // Source codes grouped into this bin, ascending.
  std::vector<Code> members;
  // Numeric and datetime bins.
  std::optional<Interval> interval;
  std::string representative;
};

struct BinningSpec {
  std::string column;
  BinningMethod method = BinningMethod::kNumericPercentile;
  std::size_t k = 0;
  std::vector<Bin> bins;
  // Source code -> bin id; the missing sentinel maps to itself.
  std::vector<Code> code_map;
  // Set when the requested binning degenerated (for example k above the
  // number of unique values).
  std::string warning;
};

struct BinnedColumn {
  BinningSpec spec;
  Column column;
};

// Equal-width: k intervals of equal span over [min, max], the last one
// closed; representative is the midpoint. Percentile: upper edges at the
// i/k quantiles (smallest value whose cumulative row rank reaches i*n/k),
// duplicate edges collapsed, bins closed on the right; representative is
// the upper edge. Bins that no row falls into are dropped.
// Throws ConfigError for k < 2 and DataError for an all-missing column.
BinnedColumn bin_numeric(const Column& column, std::size_t k,
                         BinningMethod method);

// Equal-width chops the dictionary order into k near-equal groups.
// Frequency packs values from the most frequent down, closing a bin once its
// row mass reaches rows/k. Similarity cuts the lexicographically sorted
// values at the k-1 largest Jaro-Winkler distances between neighbours.
// k above the unique count yields the identity binning and a warning.
BinnedColumn bin_symbolic(const Column& column, std::size_t k,
                          BinningMethod method);

// Frequency: intervals holding about rows/k values each (the percentile
// rule). Equal-width: k intervals of equal duration.
BinnedColumn bin_datetime(const Column& column, std::size_t k,
                          BinningMethod method);

}  // namespace treeclust

#endif  // TREECLUST_BINNING_H_
