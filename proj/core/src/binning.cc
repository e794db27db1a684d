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

#include "treeclust/binning.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "treeclust/jaro_winkler.h"
#include "util.h"

namespace treeclust {
namespace {

std::vector<std::size_t> code_counts(const Column& column) {
  std::vector<std::size_t> counts(column.cardinality() + 1, 0);
  for (Code code : column.codes) ++counts[code];
  return counts;
}

void require_k(std::size_t k) {
  if (k < 2) throw ConfigError("bin count must be at least 2");
}

// Groups of source codes, in bin order, become the binned column.
BinnedColumn assemble(const Column& column, BinningMethod method, std::size_t k,
                      std::vector<Bin> bins, ColumnKind kind) {
  BinnedColumn out;
  out.spec.column = column.name;
  out.spec.method = method;
  out.spec.k = k;
  out.spec.code_map.assign(column.cardinality() + 1, kMissingCode);
  out.column.name = column.name;
  out.column.kind = kind;
  out.column.datetime_pattern = column.datetime_pattern;
  for (std::size_t i = 0; i < bins.size(); ++i) {
    Bin& bin = bins[i];
    bin.id = static_cast<Code>(i + 1);
    std::sort(bin.members.begin(), bin.members.end());
    for (Code member : bin.members) out.spec.code_map[member] = bin.id;
    out.column.dictionary.push_back(bin.representative);
  }
  out.column.codes.reserve(column.codes.size());
  for (Code code : column.codes) out.column.codes.push_back(out.spec.code_map[code]);
  out.spec.bins = std::move(bins);
  return out;
}

std::string member_list(const Column& column, const std::vector<Code>& members) {
  if (members.size() == 1) return column.decode(members.front());
  std::string text = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) text += ", ";
    text += column.decode(members[i]);
  }
  return text + "}";
}

enum class ValuedMode { kEqualWidth, kQuantile };

// Shared numeric / datetime binning over the natural values of a column.
BinnedColumn bin_valued(const Column& column, std::size_t k,
                        BinningMethod method, ValuedMode mode) {
  require_k(k);
  const auto counts = code_counts(column);
  const std::size_t card = column.cardinality();
  std::size_t present = 0;
  for (Code c = 1; c <= card; ++c) present += counts[c];
  if (card == 0 || present == 0) {
    throw DataError("column '" + column.name + "' has no non-missing values");
  }
  const double lo = column.values.front();
  const double hi = column.values.back();

  struct Draft {
    Interval interval;
    std::vector<Code> members;
    double representative = 0;
  };
  std::vector<Draft> drafts;

  if (mode == ValuedMode::kEqualWidth || lo == hi) {
    const std::size_t slots = lo == hi ? 1 : k;
    const double width = (hi - lo) / static_cast<double>(slots);
    drafts.resize(slots);
    for (std::size_t i = 0; i < slots; ++i) {
      Draft& d = drafts[i];
      d.interval.lo = lo + width * static_cast<double>(i);
      d.interval.hi = i + 1 == slots ? hi : lo + width * static_cast<double>(i + 1);
      d.interval.lo_closed = true;
      d.interval.hi_closed = i + 1 == slots;
      d.representative = (d.interval.lo + d.interval.hi) / 2;
    }
    for (Code c = 1; c <= card; ++c) {
      std::size_t slot = 0;
      if (width > 0) {
        const double pos = std::floor((column.value_of(c) - lo) / width);
        slot = std::min(slots - 1, static_cast<std::size_t>(std::max(0.0, pos)));
      }
      drafts[slot].members.push_back(c);
    }
  } else {
    // Upper edge i = smallest value whose cumulative count reaches i*n/k.
    std::vector<double> edges;
    std::size_t cumulative = 0;
    std::size_t next = 1;
    for (Code c = 1; c <= card && next < k; ++c) {
      cumulative += counts[c];
      while (next < k && cumulative * k >= next * present) {
        if (edges.empty() || edges.back() != column.value_of(c)) {
          edges.push_back(column.value_of(c));
        }
        ++next;
      }
    }
    edges.push_back(hi);
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    drafts.resize(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      Draft& d = drafts[i];
      d.interval.lo = i == 0 ? lo : edges[i - 1];
      d.interval.lo_closed = i == 0;
      d.interval.hi = edges[i];
      d.interval.hi_closed = true;
      d.representative = edges[i];
    }
    std::size_t slot = 0;
    for (Code c = 1; c <= card; ++c) {
      while (column.value_of(c) > edges[slot]) ++slot;
      drafts[slot].members.push_back(c);
    }
  }

  std::vector<Bin> bins;
  std::vector<double> representatives;
  for (auto& d : drafts) {
    if (d.members.empty()) continue;
    Bin bin;
    bin.members = std::move(d.members);
    bin.interval = d.interval;
    if (column.kind == ColumnKind::kDatetime) {
      const std::string& first = column.decode(bin.members.front());
      const std::string& last = column.decode(bin.members.back());
      bin.representative = first == last ? first : "[" + first + " .. " + last + "]";
    } else {
      bin.representative = format_number(d.representative);
    }
    representatives.push_back(d.representative);
    bins.push_back(std::move(bin));
  }
  auto out = assemble(column, method, k, std::move(bins), column.kind);
  out.column.values = std::move(representatives);
  return out;
}

}  // namespace

std::string_view to_string(BinningMethod method) {
  switch (method) {
    case BinningMethod::kNumericEqualWidth: return "numeric-equal-width";
    case BinningMethod::kNumericPercentile: return "numeric-percentile";
    case BinningMethod::kSymbolicEqualWidth: return "symbolic-equal-width";
    case BinningMethod::kSymbolicFrequency: return "symbolic-frequency";
    case BinningMethod::kSymbolicSimilarity: return "symbolic-similarity";
    case BinningMethod::kDatetimeFrequency: return "datetime-frequency";
    case BinningMethod::kDatetimeEqualWidth: return "datetime-equal-width";
  }
  return "?";
}

std::optional<BinningMethod> parse_binning_method(std::string_view text) {
  for (auto m : {BinningMethod::kNumericEqualWidth, BinningMethod::kNumericPercentile,
                 BinningMethod::kSymbolicEqualWidth, BinningMethod::kSymbolicFrequency,
                 BinningMethod::kSymbolicSimilarity, BinningMethod::kDatetimeFrequency,
                 BinningMethod::kDatetimeEqualWidth}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

BinnedColumn bin_numeric(const Column& column, std::size_t k,
                         BinningMethod method) {
  if (column.kind != ColumnKind::kNumeric) {
    throw ConfigError("column '" + column.name + "' is not numeric");
  }
  switch (method) {
    case BinningMethod::kNumericEqualWidth:
      return bin_valued(column, k, method, ValuedMode::kEqualWidth);
    case BinningMethod::kNumericPercentile:
      return bin_valued(column, k, method, ValuedMode::kQuantile);
    default:
      throw ConfigError(std::string(to_string(method)) +
                        " does not apply to numeric columns");
  }
}

BinnedColumn bin_datetime(const Column& column, std::size_t k,
                          BinningMethod method) {
  if (column.kind != ColumnKind::kDatetime) {
    throw ConfigError("column '" + column.name + "' is not a datetime column");
  }
  switch (method) {
    case BinningMethod::kDatetimeEqualWidth:
      return bin_valued(column, k, method, ValuedMode::kEqualWidth);
    case BinningMethod::kDatetimeFrequency:
      return bin_valued(column, k, method, ValuedMode::kQuantile);
    default:
      throw ConfigError(std::string(to_string(method)) +
                        " does not apply to datetime columns");
  }
}

BinnedColumn bin_symbolic(const Column& column, std::size_t k,
                          BinningMethod method) {
  require_k(k);
  if (!is_symbolic(column.kind) && column.kind != ColumnKind::kBoolean) {
    throw ConfigError("column '" + column.name + "' is not symbolic");
  }
  if (method != BinningMethod::kSymbolicEqualWidth &&
      method != BinningMethod::kSymbolicFrequency &&
      method != BinningMethod::kSymbolicSimilarity) {
    throw ConfigError(std::string(to_string(method)) +
                      " does not apply to symbolic columns");
  }
  const std::size_t unique = column.cardinality();
  if (unique < 2) {
    throw DataError("column '" + column.name +
                    "' needs at least 2 distinct values to bin");
  }
  const auto counts = code_counts(column);

  std::vector<std::vector<Code>> groups;
  std::string warning;
  if (k > unique) {
    for (Code c = 1; c <= unique; ++c) groups.push_back({c});
    warning = "k=" + std::to_string(k) + " exceeds the " +
              std::to_string(unique) + " unique values of '" + column.name +
              "'; identity binning used";
  } else if (method == BinningMethod::kSymbolicEqualWidth) {
    for (std::size_t g = 0; g < k; ++g) {
      std::vector<Code> group;
      for (std::size_t i = g * unique / k; i < (g + 1) * unique / k; ++i) {
        group.push_back(static_cast<Code>(i + 1));
      }
      groups.push_back(std::move(group));
    }
  } else if (method == BinningMethod::kSymbolicFrequency) {
    std::vector<Code> order(unique);
    std::iota(order.begin(), order.end(), Code{1});
    std::stable_sort(order.begin(), order.end(),
                     [&](Code a, Code b) { return counts[a] > counts[b]; });
    std::size_t rows = 0;
    for (Code c = 1; c <= unique; ++c) rows += counts[c];
    std::vector<Code> current;
    std::size_t mass = 0;
    for (Code c : order) {
      current.push_back(c);
      mass += counts[c];
      if (mass * k >= rows && groups.size() + 1 < k) {
        groups.push_back(std::move(current));
        current.clear();
        mass = 0;
      }
    }
    if (!current.empty()) groups.push_back(std::move(current));
  } else {
    std::vector<Code> order(unique);
    std::iota(order.begin(), order.end(), Code{1});
    std::sort(order.begin(), order.end(), [&](Code a, Code b) {
      return column.decode(a) < column.decode(b);
    });
    std::vector<std::pair<double, std::size_t>> gaps;  // (distance, position)
    for (std::size_t i = 0; i + 1 < unique; ++i) {
      gaps.emplace_back(jaro_winkler_distance(column.decode(order[i]),
                                              column.decode(order[i + 1])),
                        i);
    }
    std::stable_sort(gaps.begin(), gaps.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<std::size_t> cuts;
    for (std::size_t i = 0; i + 1 < k; ++i) cuts.push_back(gaps[i].second);
    std::sort(cuts.begin(), cuts.end());
    std::vector<Code> current;
    std::size_t next_cut = 0;
    for (std::size_t i = 0; i < unique; ++i) {
      current.push_back(order[i]);
      if (next_cut < cuts.size() && cuts[next_cut] == i) {
        groups.push_back(std::move(current));
        current.clear();
        ++next_cut;
      }
    }
    groups.push_back(std::move(current));
  }

  std::vector<Bin> bins;
  for (auto& group : groups) {
    Bin bin;
    std::sort(group.begin(), group.end());
    bin.representative = member_list(column, group);
    bin.members = std::move(group);
    bins.push_back(std::move(bin));
  }
  auto out = assemble(column, method, k, std::move(bins), column.kind);
  out.spec.warning = std::move(warning);
  return out;
}

}  // namespace treeclust
