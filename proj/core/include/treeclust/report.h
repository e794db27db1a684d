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

// End-to-end runs: load, profile, preprocess, extract, stability, and the
// report and artifact writers.

#ifndef TREECLUST_REPORT_H_
#define TREECLUST_REPORT_H_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "treeclust/dataset.h"
#include "treeclust/extract.h"
#include "treeclust/preprocess.h"
#include "treeclust/stability.h"

namespace treeclust {

inline constexpr int kReportSchemaVersion = 1;

// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitInternal = 4;

struct RunConfig {
  std::filesystem::path input;
  LoadOptions load;
  // Class name to extract; class code 1 when unset.
  std::optional<std::string> target_class;
  ExtractionConfig extraction;
  bool stability = false;
  StabilityParams stability_params;
  std::filesystem::path out_dir;
  bool write_text = true;
  bool write_json = true;
  bool write_dot = true;
};

// Reads a JSON run configuration. Keys absent from the file keep the
// values of `base`. Throws ConfigError on malformed input.
RunConfig parse_run_config(std::string_view json_text, RunConfig base = {});
RunConfig load_run_config(const std::filesystem::path& path,
                          RunConfig base = {});

// Throws ConfigError for out-of-range settings.
void validate(const RunConfig& config);

// A failed pipeline stage. what() is "<stage>: <message>".
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& message, int exit_code);
  const std::string& stage() const { return stage_; }
  int exit_code() const { return exit_code_; }

 private:
  std::string stage_;
  int exit_code_;
};

struct StageTiming {
  std::string stage;
  double seconds = 0;
};

struct RunReport {
  RunConfig config;
  ProfileReport profile;
  PreparedData prepared;
  ClassCode target_class = 0;
  ExtractionResult extraction;
  std::optional<StabilityReport> stability;
  std::vector<StageTiming> timings;
};

// Runs every stage; any failure is rethrown as StageError. n_clusters = 0
// stops after profiling and preprocessing.
RunReport run(const RunConfig& config);
// Same, over an already loaded dataset.
RunReport run(const RunConfig& config, const Dataset& source);

// "IF age <= 30 AND sex in {female} THEN survived"; "IF (always) THEN x"
// for an empty rule.
std::string render_rule(const Rule& rule,
                        const std::vector<std::string>& class_names);

// render_rule() plus "(precision P, covers S rows, Q% of population)".
std::string render_rule_text(const ClusterCandidate& cluster,
                             const std::vector<std::string>& class_names,
                             std::size_t population);

// Machine-readable report; free of timings, so identical inputs give
// identical bytes.
std::string report_to_json(const RunReport& report);
std::string report_to_text(const RunReport& report);

// Writes report.json, report.txt, cluster_NN.rule.txt, cluster_NN.rows.txt
// and tree_NN.dot under config.out_dir. Returns the paths written.
std::vector<std::filesystem::path> write_artifacts(const RunReport& report);

}  // namespace treeclust

#endif  // TREECLUST_REPORT_H_
