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

#ifndef TREECLUST_SYNTH_H_
#define TREECLUST_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "treeclust/dataset.h"
#include "treeclust/rule.h"
#include "treeclust/types.h"

namespace treeclust {

struct HiddenGroupSpec {
  std::string name;
  Rule rule;
  // Expected share of the population; reported against the achieved one.
  double target_share = 0;
  double p_in = 0.95;
  double p_out = 0.05;
};

struct SynthSpec {
  std::vector<HiddenGroupSpec> groups;
  std::uint64_t seed = 1;
  std::string label_name = "interested";
  std::string positive_label = "1";
  std::string negative_label = "0";
  // column -> constant subtracted from every value before planting.
  std::map<std::string, double> shifts;
};

// Reads the JSON spec file format; throws ConfigError on schema errors.
SynthSpec load_synth_spec(const std::filesystem::path& path);
SynthSpec parse_synth_spec(std::string_view json_text);

struct PlantingResult {
  Dataset labelled;
  // Rows matching each group rule, ascending, overlaps included.
  std::vector<RowIds> truth;
  std::vector<double> shares;
  // Fraction of rows matched by more than one rule.
  double overlap_fraction = 0;
  std::vector<std::string> warnings;
};

// Subtracts `constant` from a numeric column. Throws ConfigError for an
// unknown or non-numeric column.
void shift_column(Dataset& ds, std::string_view column, double constant);

// Labels every row positive with p_in of the first matching group, or with
// p_out when no group matches. Class codes: 0 negative, 1 positive.
// Throws ConfigError when a rule names an unknown column or value.
PlantingResult plant_groups(const Dataset& features,
                            std::span<const HiddenGroupSpec> groups,
                            std::uint64_t seed,
                            const std::string& label_name = "interested",
                            const std::string& positive_label = "1",
                            const std::string& negative_label = "0");

// Applies spec.shifts, then plants spec.groups.
PlantingResult plant(const Dataset& features, const SynthSpec& spec);

struct RecoveryCell {
  double jaccard = 0;
  double precision = 0;  // |C ∩ T| / |C|
  double recall = 0;     // |C ∩ T| / |T|
};

struct RecoveryMatch {
  std::size_t truth = 0;
  std::size_t cluster = 0;
  RecoveryCell score;
};

struct RecoveryReport {
  // cells[truth][cluster]
  std::vector<std::vector<RecoveryCell>> cells;
  // Greedy one-to-one assignment, highest Jaccard first.
  std::vector<RecoveryMatch> matches;
};

RecoveryReport evaluate_recovery(std::span<const RowIds> clusters,
                                 std::span<const RowIds> truth);

}  // namespace treeclust

#endif  // TREECLUST_SYNTH_H_
