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

#include <benchmark/benchmark.h>

#include <string>

#include "treeclust/binning.h"
#include "treeclust/extract.h"
#include "treeclust/random.h"
#include "treeclust/tree.h"

namespace {

using namespace treeclust;

// n rows of numeric and nominal columns; the label depends on two of them.
Dataset make_table(std::size_t n, std::size_t columns) {
  Rng rng(11);
  CsvTable t(1);
  for (std::size_t c = 0; c < columns; ++c) t[0].push_back("c" + std::to_string(c));
  t[0].push_back("y");
  for (std::size_t r = 0; r < n; ++r) {
    CsvRow row;
    for (std::size_t c = 0; c < columns; ++c) {
      row.push_back(c % 2 ? "v" + std::to_string(rng.below(12))
                          : std::to_string(rng.below(1000)));
    }
    const bool pos = (row[0].size() < 3 && row[1] < "v5") || rng.bernoulli(0.1);
    row.push_back(pos ? "1" : "0");
    t.push_back(std::move(row));
  }
  LoadOptions o;
  for (std::size_t c = 1; c < columns; c += 2) {
    o.kind_hints["c" + std::to_string(c)] = ColumnKind::kNominal;
  }
  return dataset_from_table(t, o);
}

void BM_BestSplit(benchmark::State& state) {
  const Dataset ds = make_table(static_cast<std::size_t>(state.range(0)), 8);
  const RowIds rows = all_rows(ds);
  TrainParams p;
  p.num_threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(best_split(rows, ds, p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BestSplit)->Args({1000, 1})->Args({32000, 1})->Args({32000, 4});

void BM_Train(benchmark::State& state) {
  const Dataset ds = make_table(32000, 12);
  TrainParams p;
  p.max_depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(train(ds, p));
}
BENCHMARK(BM_Train)->Arg(3)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_PercentileBinning(benchmark::State& state) {
  const Dataset ds = make_table(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bin_numeric(ds.columns[0], 10, BinningMethod::kNumericPercentile));
  }
}
BENCHMARK(BM_PercentileBinning)->Arg(1000)->Arg(32000);

void BM_Extraction(benchmark::State& state) {
  const Dataset ds = make_table(32000, 12);
  ExtractionConfig c;
  c.train.max_depth = 3;
  for (auto _ : state) benchmark::DoNotOptimize(run_extraction(ds, c));
}
BENCHMARK(BM_Extraction)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
