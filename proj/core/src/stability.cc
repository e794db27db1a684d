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

#include "treeclust/stability.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "treeclust/random.h"

namespace treeclust {
namespace {

std::size_t sample_size(double fraction, std::size_t n) {
  const double x = fraction * static_cast<double>(n);
  const double r = std::round(x);
  double m = std::abs(x - r) <= 1e-9 * std::max(1.0, x) ? r : std::ceil(x);
  m = std::clamp(m, n == 0 ? 0.0 : 1.0, static_cast<double>(n));
  return static_cast<std::size_t>(m);
}

double jaccard(std::span<const RowId> a, std::span<const RowId> b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return static_cast<double>(common) /
         static_cast<double>(a.size() + b.size() - common);
}

// Best score of every original cluster against the clusters of one sample.
std::vector<double> score_sample(std::span<const ClusterCandidate> clusters,
                                 const Dataset& source,
                                 const ExtractionConfig& config,
                                 const StabilityParams& params,
                                 std::size_t k, std::size_t& found) {
  const SampleView view = draw_sample(source, params.fraction, params.seed, k);
  const ExtractionResult result = run_extraction(view.data, config);
  found = result.clusters.size();
  std::vector<RowIds> mapped;
  for (const auto& c : result.clusters) {
    RowIds ids;
    ids.reserve(c.row_ids.size());
    for (RowId r : c.row_ids) ids.push_back(view.original_ids.at(r));
    mapped.push_back(std::move(ids));
  }
  std::vector<double> best(clusters.size(), 0.0);
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    for (const auto& ids : mapped) {
      best[i] = std::max(best[i],
                         pairwise_score(clusters[i].row_ids, ids, view.original_ids));
    }
  }
  return best;
}

}  // namespace

SampleView draw_sample(const Dataset& ds, double fraction, std::uint64_t seed,
                       std::size_t k) {
  if (!(fraction > 0 && fraction <= 1)) {
    throw ConfigError("sample fraction must lie in (0, 1]");
  }
  const std::size_t n = ds.row_count();
  const std::size_t m = sample_size(fraction, n);
  RowIds ids(n);
  std::iota(ids.begin(), ids.end(), RowId{0});
  Rng rng(mix_seed(seed, k));
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + rng.below(n - i);
    std::swap(ids[i], ids[j]);
  }
  ids.resize(m);
  std::sort(ids.begin(), ids.end());
  SampleView view{subset(ds, ids), std::move(ids)};
  return view;
}

double pairwise_score(std::span<const RowId> cluster,
                      std::span<const RowId> sample_cluster,
                      std::span<const RowId> sample_rows) {
  RowIds restricted;
  std::set_intersection(cluster.begin(), cluster.end(), sample_rows.begin(),
                        sample_rows.end(), std::back_inserter(restricted));
  return jaccard(restricted, sample_cluster);
}

StabilityReport stability_report(std::span<const ClusterCandidate> clusters,
                                 const Dataset& source,
                                 const ExtractionConfig& config,
                                 const StabilityParams& params) {
  if (params.samples < 1) throw ConfigError("stability needs at least one sample");
  if (!(params.fraction > 0 && params.fraction <= 1)) {
    throw ConfigError("sample fraction must lie in (0, 1]");
  }
  const std::size_t n = params.samples;
  std::vector<std::vector<double>> scores(n);
  std::vector<std::size_t> found(n, 0);

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < n;) {
      try {
        scores[k] = score_sample(clusters, source, config, params, k, found[k]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned threads =
      std::max(1u, std::min<unsigned>(params.num_threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  StabilityReport report;
  report.params = params;
  report.sample_cluster_counts = found;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    ClusterStability s;
    for (std::size_t k = 0; k < n; ++k) s.per_sample.push_back(scores[k][i]);
    double sum = 0;
    for (double v : s.per_sample) sum += v;
    s.mean = sum / static_cast<double>(n);
    s.min = *std::min_element(s.per_sample.begin(), s.per_sample.end());
    s.max = *std::max_element(s.per_sample.begin(), s.per_sample.end());
    report.clusters.push_back(std::move(s));
  }
  return report;
}

}  // namespace treeclust
