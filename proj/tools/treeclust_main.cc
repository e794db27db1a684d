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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "treeclust/csv.h"
#include "treeclust/dot.h"
#include "treeclust/report.h"
#include "treeclust/synth.h"

namespace fs = std::filesystem;
using namespace treeclust;

namespace {

struct Flags {
  std::string config;
  std::string input;
  std::string label;
  std::string target;
  double beta = 0.33;
  int depth = 5;
  std::size_t clusters = 3;
  std::size_t bins = 0;
  std::string reorder;
  std::uint64_t seed = 1;
  std::string out;
  unsigned threads = 1;
  std::vector<std::string> missing;
  std::size_t samples = 20;
  double fraction = 0.8;
  std::string spec;
  bool evaluate = false;
  std::size_t tree = 0;
};

struct Given {
  CLI::Option* label = nullptr;
  CLI::Option* target = nullptr;
  CLI::Option* beta = nullptr;
  CLI::Option* depth = nullptr;
  CLI::Option* clusters = nullptr;
  CLI::Option* bins = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* threads = nullptr;
  CLI::Option* missing = nullptr;
  CLI::Option* samples = nullptr;
  CLI::Option* fraction = nullptr;
};

void add_run_flags(CLI::App* cmd, Flags& f, Given& g) {
  cmd->add_option("--config", f.config, "JSON run configuration")->check(CLI::ExistingFile);
  cmd->add_option("--input", f.input, "CSV file");
  g.label = cmd->add_option("--label", f.label, "label column (default: last)");
  g.target = cmd->add_option("--class", f.target, "class to describe (default: second class)");
  g.beta = cmd->add_option("--beta", f.beta, "F-beta weight of recall")
               ->check(CLI::PositiveNumber)->capture_default_str();
  g.depth = cmd->add_option("--depth", f.depth, "maximum tree depth")
                ->check(CLI::Range(1, 64))->capture_default_str();
  g.clusters = cmd->add_option("--clusters", f.clusters, "clusters to extract")
                   ->capture_default_str();
  g.bins = cmd->add_option("--bins", f.bins, "percentile bins for numeric columns (0: off)");
  cmd->add_option("--reorder-symbolic", f.reorder, "order nominal values by class frequency")
      ->check(CLI::IsMember({"on", "off"}));
  g.seed = cmd->add_option("--seed", f.seed, "random seed")->capture_default_str();
  cmd->add_option("--out", f.out, "output directory");
  g.threads = cmd->add_option("--threads", f.threads, "worker threads")->capture_default_str();
  g.missing = cmd->add_option("--missing", f.missing, "missing-value tokens")
                  ->expected(0, -1);
}

RunConfig build_config(const Flags& f, const Given& g) {
  RunConfig c;
  if (!f.config.empty()) c = load_run_config(f.config, c);
  if (!f.input.empty()) c.input = f.input;
  if (c.input.empty()) throw ConfigError("--input is required");
  if (g.label->count()) c.load.label = f.label;
  if (g.target->count()) c.target_class = f.target;
  if (g.missing->count()) c.load.missing_tokens = f.missing;
  auto& e = c.extraction;
  if (g.beta->count() || f.config.empty()) e.beta = f.beta;
  if (g.depth->count() || f.config.empty()) e.train.max_depth = f.depth;
  if (g.clusters->count() || f.config.empty()) e.n_clusters = f.clusters;
  if (g.bins->count()) e.preprocess.numeric_bins = f.bins;
  if (!f.reorder.empty()) e.preprocess.reorder_symbolic = f.reorder == "on";
  if (g.threads->count()) {
    e.train.num_threads = f.threads;
    c.stability_params.num_threads = f.threads;
  }
  if (g.seed->count()) c.stability_params.seed = f.seed;
  if (g.samples && g.samples->count()) c.stability_params.samples = f.samples;
  if (g.fraction && g.fraction->count()) c.stability_params.fraction = f.fraction;
  if (!f.out.empty()) c.out_dir = f.out;
  if (c.out_dir.empty()) c.out_dir = "treeclust_out";
  return c;
}

void log_timings(const RunReport& r) {
  for (const auto& t : r.timings) spdlog::info("{}: {:.3f} s", t.stage, t.seconds);
}

void print_profile(const ProfileReport& p) {
  std::cout << "rows: " << p.row_count << "\nclasses:";
  for (std::size_t c = 0; c < p.class_names.size(); ++c) {
    std::printf(" %s %.1f%%", p.class_names[c].c_str(), 100 * p.prevalence[c]);
  }
  std::cout << "\n";
  for (const auto& col : p.columns) {
    std::cout << "\n" << col.column << " (" << to_string(col.kind) << ", "
              << col.unique_values << " values)\n";
    if (col.categories.empty()) {
      std::cout << "  too many values to list\n";
      continue;
    }
    for (const auto& cat : col.categories) {
      std::printf("  %-24s %6zu", cat.value.c_str(), cat.count);
      for (double rate : cat.class_rates) std::printf("  %6.3f", rate);
      std::printf("\n");
    }
  }
}

int cmd_profile(const Flags& f, const Given& g) {
  RunConfig c = build_config(f, g);
  c.extraction.n_clusters = 0;
  const RunReport r = run(c);
  log_timings(r);
  print_profile(r.profile);
  return kExitOk;
}

int cmd_extract(const Flags& f, const Given& g, bool stability) {
  RunConfig c = build_config(f, g);
  if (stability) c.stability = true;
  const RunReport r = run(c);
  log_timings(r);
  const auto written = write_artifacts(r);
  spdlog::info("wrote {} files under {}", written.size(), c.out_dir.string());
  std::cout << report_to_text(r);
  return kExitOk;
}

int cmd_export_dot(const Flags& f, const Given& g) {
  RunConfig c = build_config(f, g);
  c.write_text = c.write_json = false;
  const RunReport r = run(c);
  log_timings(r);
  if (f.tree == 0) {
    for (const auto& p : write_artifacts(r)) {
      if (p.extension() == ".dot") std::cout << p.string() << "\n";
    }
    return kExitOk;
  }
  if (f.tree > r.extraction.trees.size()) {
    throw ConfigError("--tree " + std::to_string(f.tree) + " out of range (" +
                      std::to_string(r.extraction.trees.size()) + " trees)");
  }
  std::vector<NodeId> highlight;
  for (const auto& cl : r.extraction.clusters) {
    if (cl.tree_index + 1 == f.tree) highlight.push_back(cl.node_id);
  }
  DotOptions options;
  options.highlight = highlight;
  options.log = &r.prepared.log;
  options.source = &r.prepared.source;
  std::cout << to_dot(r.extraction.trees[f.tree - 1], r.prepared.working, options);
  return kExitOk;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw ConfigError("cannot write " + path.string());
}

std::string two_digits(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02zu", i);
  return buf;
}

int cmd_synth(const Flags& f, const Given& g) {
  if (f.input.empty()) throw ConfigError("--input is required");
  if (f.spec.empty()) throw ConfigError("--spec is required");
  SynthSpec spec = load_synth_spec(f.spec);
  if (g.seed->count()) spec.seed = f.seed;

  LoadOptions load;
  load.unlabelled = true;
  load.missing_tokens = g.missing->count() ? f.missing : std::vector<std::string>{""};
  Dataset features;
  try {
    features = load_csv(f.input, load);
  } catch (const DataError& e) {
    throw StageError("load", e.what(), kExitData);
  }
  const PlantingResult planted = plant(features, spec);
  for (const auto& w : planted.warnings) spdlog::warn("{}", w);

  const fs::path dir = f.out.empty() ? fs::path("treeclust_synth") : fs::path(f.out);
  fs::create_directories(dir);
  {
    std::ofstream csv(dir / "synthetic.csv", std::ios::binary);
    for (const auto& row : to_table(planted.labelled)) write_csv_row(csv, row);
    if (!csv) throw ConfigError("cannot write " + (dir / "synthetic.csv").string());
  }
  nlohmann::ordered_json summary;
  summary["seed"] = spec.seed;
  summary["rows"] = features.row_count();
  std::size_t positives = 0;
  for (ClassCode c : planted.labelled.labels) positives += c == 1;
  summary["positives"] = positives;
  summary["overlap_fraction"] = planted.overlap_fraction;
  summary["groups"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < spec.groups.size(); ++i) {
    const std::string rows_file = "group_" + two_digits(i + 1) + ".rows.txt";
    std::string rows;
    for (RowId r : planted.truth[i]) rows += std::to_string(r) + "\n";
    write_text(dir / rows_file, rows);
    nlohmann::ordered_json gj;
    gj["name"] = spec.groups[i].name;
    gj["target_share"] = spec.groups[i].target_share;
    gj["share"] = planted.shares[i];
    gj["size"] = planted.truth[i].size();
    gj["rows_file"] = rows_file;
    summary["groups"].push_back(gj);
    std::printf("%-10s share %.4f (target %.4f), %zu rows\n", spec.groups[i].name.c_str(),
                planted.shares[i], spec.groups[i].target_share, planted.truth[i].size());
  }
  std::printf("positives: %zu of %zu\n", positives, features.row_count());

  if (f.evaluate) {
    RunConfig c;
    c.extraction.beta = f.beta;
    c.extraction.train.max_depth = f.depth;
    c.extraction.n_clusters = f.clusters;
    c.extraction.train.num_threads = f.threads;
    if (f.bins) c.extraction.preprocess.numeric_bins = f.bins;
    if (!f.reorder.empty()) c.extraction.preprocess.reorder_symbolic = f.reorder == "on";
    c.input = dir / "synthetic.csv";
    c.out_dir = dir / "extraction";
    const RunReport r = run(c, planted.labelled);
    log_timings(r);
    write_artifacts(r);
    std::vector<RowIds> found;
    for (const auto& cl : r.extraction.clusters) found.push_back(cl.row_ids);
    const RecoveryReport rec = evaluate_recovery(found, planted.truth);
    summary["recovery"] = nlohmann::ordered_json::array();
    for (const auto& m : rec.matches) {
      nlohmann::ordered_json mj;
      mj["group"] = spec.groups[m.truth].name;
      mj["cluster"] = m.cluster + 1;
      mj["jaccard"] = m.score.jaccard;
      mj["precision"] = m.score.precision;
      mj["recall"] = m.score.recall;
      summary["recovery"].push_back(mj);
      std::printf("%-10s <- cluster %zu  jaccard %.4f  precision %.4f  recall %.4f\n",
                  spec.groups[m.truth].name.c_str(), m.cluster + 1, m.score.jaccard,
                  m.score.precision, m.score.recall);
    }
  }
  write_text(dir / "synth.json", summary.dump(2) + "\n");
  return kExitOk;
}

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("treeclust");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("TREECLUST_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Describe a class of a labelled CSV with decision-tree rules."};
  app.require_subcommand(1);
  Flags f;

  Given gp, ge, gs, gd, gy;
  auto* profile = app.add_subcommand("profile", "class rates per column value");
  add_run_flags(profile, f, gp);
  auto* extract = app.add_subcommand("extract", "extract rule clusters");
  add_run_flags(extract, f, ge);
  auto* stability = app.add_subcommand("stability", "extract and score cluster stability");
  add_run_flags(stability, f, gs);
  gs.samples = stability->add_option("--samples", f.samples, "number of subsamples")
                   ->capture_default_str();
  gs.fraction = stability->add_option("--fraction", f.fraction, "subsample fraction")
                    ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  auto* dot = app.add_subcommand("export-dot", "write the trees as Graphviz files");
  add_run_flags(dot, f, gd);
  dot->add_option("--tree", f.tree, "print only this tree (1-based) to stdout");
  auto* synth = app.add_subcommand("synth", "plant hidden groups in a feature table");
  add_run_flags(synth, f, gy);
  synth->add_option("--spec", f.spec, "JSON group specification")->check(CLI::ExistingFile);
  synth->add_flag("--evaluate", f.evaluate, "extract clusters and score recovery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (profile->parsed()) return cmd_profile(f, gp);
    if (extract->parsed()) return cmd_extract(f, ge, false);
    if (stability->parsed()) return cmd_extract(f, gs, true);
    if (dot->parsed()) return cmd_export_dot(f, gd);
    if (synth->parsed()) return cmd_synth(f, gy);
  } catch (const StageError& e) {
    spdlog::error("{}", e.what());
    return e.exit_code();
  } catch (const ConfigError& e) {
    spdlog::error("config: {}", e.what());
    return kExitConfig;
  } catch (const DataError& e) {
    spdlog::error("data: {}", e.what());
    return kExitData;
  } catch (const std::exception& e) {
    spdlog::error("internal: {}", e.what());
    return kExitInternal;
  }
  return kExitInternal;
}
