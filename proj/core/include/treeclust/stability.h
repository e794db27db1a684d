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

#ifndef TREECLUST_STABILITY_H_
#define TREECLUST_STABILITY_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "treeclust/dataset.h"
#include "treeclust/extract.h"
#include "treeclust/types.h"

namespace treeclust {

struct SampleView {
  Dataset data;
  // original_ids[i] is the source row of sample row i; ascending.
  RowIds original_ids;
};

// Uniform sample of ceil(fraction * rows) rows without replacement,
// reproducible per (seed, k). Throws ConfigError unless 0 < fraction <= 1.
SampleView draw_sample(const Dataset& ds, double fraction, std::uint64_t seed,
                       std::size_t k);

// Jaccard index of (cluster ∩ sample) and sample_cluster; 1 when both are
// empty. All inputs ascending.
double pairwise_score(std::span<const RowId> cluster,
                      std::span<const RowId> sample_cluster,
                      std::span<const RowId> sample_rows);

struct StabilityParams {
  std::size_t samples = 20;
  double fraction = 0.8;
  std::uint64_t seed = 1;
  unsigned num_threads = 1;
};

struct ClusterStability {
  // Best pairwise score in each sample.
  std::vector<double> per_sample;
  double mean = 0;
  double min = 0;
  double max = 0;
};

struct StabilityReport {
  StabilityParams params;
  std::vector<ClusterStability> clusters;
  // Clusters extracted from each sample.
  std::vector<std::size_t> sample_cluster_counts;
};

// Re-runs the whole extraction (preprocessing refitted) on each sample
// and scores every original cluster against its best-matching sample
// cluster. A sample that yields no cluster scores 0.
StabilityReport stability_report(std::span<const ClusterCandidate> clusters,
                                 const Dataset& source,
                                 const ExtractionConfig& config,
                                 const StabilityParams& params);

}  // namespace treeclust

#endif  // TREECLUST_STABILITY_H_
