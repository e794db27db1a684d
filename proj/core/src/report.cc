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

#include "treeclust/report.h"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "treeclust/dot.h"
#include "treeclust/rule.h"
#include "treeclust/tree.h"

namespace treeclust {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string percent(double fraction) { return fixed(100 * fraction, 1) + "%"; }

std::string two_digits(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%02zu", i);
  return buf;
}

ColumnPlan parse_plan(const json& j) {
  ColumnPlan plan;
  if (j.contains("method")) {
    const auto name = j.at("method").get<std::string>();
    plan.method = parse_binning_method(name);
    if (!plan.method) throw ConfigError("unknown binning method '" + name + "'");
  }
  plan.bins = j.value("bins", plan.bins);
  if (j.contains("reorder")) plan.reorder = j.at("reorder").get<bool>();
  plan.drop = j.value("drop", plan.drop);
  return plan;
}

void apply_config(const json& j, RunConfig& c) {
  if (!j.is_object()) throw ConfigError("run config must be a JSON object");
  if (j.contains("input")) c.input = j.at("input").get<std::string>();
  if (j.contains("label")) c.load.label = j.at("label").get<std::string>();
  if (j.contains("class")) c.target_class = j.at("class").get<std::string>();
  if (j.contains("missing_tokens")) {
    c.load.missing_tokens = j.at("missing_tokens").get<std::vector<std::string>>();
  }
  if (j.contains("delimiter")) {
    const auto d = j.at("delimiter").get<std::string>();
    if (d.size() != 1) throw ConfigError("delimiter must be one character");
    c.load.csv.delimiter = d.front();
  }
  if (j.contains("kinds")) {
    for (const auto& [name, kind] : j.at("kinds").items()) {
      const auto parsed = parse_column_kind(kind.get<std::string>());
      if (!parsed) throw ConfigError("unknown column kind for '" + name + "'");
      c.load.kind_hints[name] = *parsed;
    }
  }
  if (j.contains("ordinal_orders")) {
    for (const auto& [name, order] : j.at("ordinal_orders").items()) {
      c.load.ordinal_orders[name] = order.get<std::vector<std::string>>();
    }
  }
  if (j.contains("datetime_patterns")) {
    c.load.datetime_patterns =
        j.at("datetime_patterns").get<std::vector<std::string>>();
  }

  auto& e = c.extraction;
  e.beta = j.value("beta", e.beta);
  e.n_clusters = j.value("clusters", e.n_clusters);
  e.train.max_depth = j.value("depth", e.train.max_depth);
  e.train.min_gain = j.value("min_gain", e.train.min_gain);
  e.train.min_samples_leaf = j.value("min_samples_leaf", e.train.min_samples_leaf);
  e.train.num_threads = j.value("threads", e.train.num_threads);
  if (j.contains("metric")) {
    const auto name = j.at("metric").get<std::string>();
    const auto metric = parse_impurity_metric(name);
    if (!metric) throw ConfigError("unknown impurity metric '" + name + "'");
    e.train.metric = *metric;
  }
  if (j.contains("preprocess")) {
    const json& p = j.at("preprocess");
    auto& pp = e.preprocess;
    if (p.contains("numeric_method")) {
      const auto name = p.at("numeric_method").get<std::string>();
      const auto method = parse_binning_method(name);
      if (!method) throw ConfigError("unknown binning method '" + name + "'");
      pp.numeric_method = *method;
    }
    pp.numeric_bins = p.value("numeric_bins", pp.numeric_bins);
    pp.reorder_symbolic = p.value("reorder_symbolic", pp.reorder_symbolic);
    pp.high_cardinality_threshold =
        p.value("high_cardinality_threshold", pp.high_cardinality_threshold);
    if (p.contains("columns")) {
      for (const auto& [name, plan] : p.at("columns").items()) {
        pp.columns[name] = parse_plan(plan);
      }
    }
  }
  if (j.contains("stability")) {
    const json& s = j.at("stability");
    c.stability = s.value("enabled", true);
    auto& sp = c.stability_params;
    sp.samples = s.value("samples", sp.samples);
    sp.fraction = s.value("fraction", sp.fraction);
    sp.seed = s.value("seed", sp.seed);
    sp.num_threads = s.value("threads", sp.num_threads);
  }
  if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (dynamic_cast<const DataError*>(&e)) return kExitData;
  return kExitInternal;
}

template <class F>
void timed_stage(const char* name, std::vector<StageTiming>& timings, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  try {
    body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what(), exit_code_for(e));
  }
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  timings.push_back({name, elapsed.count()});
}

double gini_of(const TreeNode& node) {
  return node.samples == 0 ? 0.0 : impurity(node.class_counts, ImpurityMetric::kGini);
}

ordered_json predicate_json(const Predicate& p) {
  ordered_json j;
  j["attribute"] = p.attribute;
  j["op"] = std::string(to_string(p.op));
  if (p.lower) {
    j["lower"] = *p.lower;
    j["lower_text"] = p.lower_text;
  }
  if (p.upper) {
    j["upper"] = *p.upper;
    j["upper_text"] = p.upper_text;
  }
  if (!p.values.empty()) j["values"] = p.values;
  j["matches_missing"] = p.matches_missing;
  j["text"] = render_predicate(p);
  return j;
}

ordered_json config_json(const RunConfig& c, const std::string& target_name) {
  const auto& e = c.extraction;
  ordered_json pp;
  pp["numeric_method"] = std::string(to_string(e.preprocess.numeric_method));
  pp["numeric_bins"] = e.preprocess.numeric_bins;
  pp["reorder_symbolic"] = e.preprocess.reorder_symbolic;
  pp["high_cardinality_threshold"] = e.preprocess.high_cardinality_threshold;
  ordered_json plans = ordered_json::object();
  for (const auto& [name, plan] : e.preprocess.columns) {
    ordered_json p;
    if (plan.method) p["method"] = std::string(to_string(*plan.method));
    p["bins"] = plan.bins;
    if (plan.reorder) p["reorder"] = *plan.reorder;
    p["drop"] = plan.drop;
    plans[name] = p;
  }
  pp["columns"] = plans;

  ordered_json j;
  j["input"] = c.input.filename().string();
  j["label"] = c.load.label ? ordered_json(*c.load.label) : ordered_json(nullptr);
  j["class"] = target_name;
  j["beta"] = e.beta;
  j["clusters"] = e.n_clusters;
  j["depth"] = e.train.max_depth;
  j["metric"] = std::string(to_string(e.train.metric));
  j["min_gain"] = e.train.min_gain;
  j["min_samples_leaf"] = e.train.min_samples_leaf;
  j["preprocess"] = pp;
  ordered_json s;
  s["enabled"] = c.stability;
  s["samples"] = c.stability_params.samples;
  s["fraction"] = c.stability_params.fraction;
  s["seed"] = c.stability_params.seed;
  j["stability"] = s;
  return j;
}

ordered_json transform_json(const ColumnTransform& t, const Dataset& source) {
  ordered_json j;
  j["column"] = t.column;
  j["source_kind"] = std::string(to_string(t.source_kind));
  j["working_kind"] = std::string(to_string(t.working_kind));
  if (t.binning) {
    const Column& column = source.columns.at(t.source_index);
    ordered_json b;
    b["method"] = std::string(to_string(t.binning->method));
    b["k"] = t.binning->k;
    ordered_json bins = ordered_json::array();
    for (const Bin& bin : t.binning->bins) {
      ordered_json x;
      x["id"] = bin.id;
      x["representative"] = bin.representative;
      if (bin.interval) {
        x["lo"] = bin.interval->lo;
        x["hi"] = bin.interval->hi;
        x["lo_closed"] = bin.interval->lo_closed;
        x["hi_closed"] = bin.interval->hi_closed;
      }
      std::vector<std::string> members;
      for (Code m : bin.members) members.push_back(column.decode(m));
      x["members"] = members;
      bins.push_back(x);
    }
    b["bins"] = bins;
    if (!t.binning->warning.empty()) b["warning"] = t.binning->warning;
    j["binning"] = b;
  }
  if (t.encoding) j["order"] = t.encoding->order;
  return j;
}

ordered_json tree_json(const DecisionTree& tree, const RowIds& rows,
                       const PreparedData& prepared) {
  ordered_json nodes = ordered_json::array();
  for (const TreeNode& n : tree.nodes()) {
    ordered_json x;
    x["id"] = n.id;
    x["parent"] = n.parent;
    x["left"] = n.left;
    x["right"] = n.right;
    x["depth"] = n.depth;
    if (n.split) {
      const Column& column = prepared.working.columns.at(n.split->attribute);
      ordered_json s;
      s["attribute"] = column.name;
      s["op"] = n.split->op == SplitOperator::kOrdinal ? "<=" : "=";
      s["pivot"] = n.split->pivot;
      s["pivot_value"] = n.split->pivot == kMissingCode
                             ? std::string("(missing)")
                             : column.decode(n.split->pivot);
      s["condition"] = render_predicate(
          split_predicate(*n.split, true, prepared.log, prepared.source));
      x["split"] = s;
      x["gain"] = n.gain;
    }
    x["samples"] = n.samples;
    x["value"] = n.class_counts;
    x["impurity"] = n.impurity;
    x["decision"] = prepared.working.class_names.at(n.decision);
    nodes.push_back(x);
  }
  ordered_json j;
  j["training_rows"] = rows.size();
  j["nodes"] = nodes;
  return j;
}

}  // namespace

StageError::StageError(std::string stage, const std::string& message,
                       int exit_code)
    : std::runtime_error(stage + ": " + message),
      stage_(std::move(stage)),
      exit_code_(exit_code) {}

RunConfig parse_run_config(std::string_view json_text, RunConfig base) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("run config is not valid JSON: ") + e.what());
  }
  try {
    apply_config(j, base);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad run config: ") + e.what());
  }
  return base;
}

RunConfig load_run_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str(), std::move(base));
}

void validate(const RunConfig& config) {
  const auto& e = config.extraction;
  if (!(e.beta > 0)) throw ConfigError("beta must be positive");
  validate(e.train);
  if (config.stability) {
    if (config.stability_params.samples < 1) {
      throw ConfigError("stability needs at least one sample");
    }
    const double f = config.stability_params.fraction;
    if (!(f > 0 && f <= 1)) throw ConfigError("sample fraction must lie in (0, 1]");
  }
  for (const auto& [name, plan] : e.preprocess.columns) {
    if (plan.method && !plan.drop && plan.bins < 2) {
      throw ConfigError("column '" + name + "' needs at least 2 bins");
    }
  }
}

RunReport run(const RunConfig& config) {
  std::vector<StageTiming> timings;
  Dataset source;
  timed_stage("validate", timings, [&] { validate(config); });
  timed_stage("load", timings, [&] { source = load_csv(config.input, config.load); });
  RunReport report = run(config, source);
  report.timings.insert(report.timings.begin(), timings.begin(), timings.end());
  return report;
}

RunReport run(const RunConfig& config, const Dataset& source) {
  RunReport report;
  report.config = config;
  auto& t = report.timings;
  timed_stage("config", t, [&] {
    validate(config);
    if (!source.labelled()) throw ConfigError("dataset has no class labels");
    for (const auto& [name, plan] : config.extraction.preprocess.columns) {
      if (!source.column_index(name)) {
        throw ConfigError("preprocessing plan names unknown column '" + name + "'");
      }
    }
    if (config.target_class) {
      report.target_class = source.class_code(*config.target_class);
    } else {
      if (source.class_count() < 2) {
        throw ConfigError("extraction needs at least two classes");
      }
      report.target_class = 1;
    }
  });
  timed_stage("profile", t, [&] { report.profile = profile(source); });
  timed_stage("preprocess", t, [&] {
    report.prepared =
        prepare(source, config.extraction.preprocess, report.target_class);
  });
  if (config.extraction.n_clusters == 0) return report;
  timed_stage("extract", t, [&] {
    const auto& e = config.extraction;
    report.extraction = extract_iterative(report.prepared, e.train,
                                          report.target_class, e.beta,
                                          e.n_clusters);
  });
  if (config.stability) {
    timed_stage("stability", t, [&] {
      ExtractionConfig e = config.extraction;
      e.target_class = report.target_class;
      report.stability = stability_report(report.extraction.clusters, source, e,
                                          config.stability_params);
    });
  }
  return report;
}

std::string render_rule(const Rule& rule,
                        const std::vector<std::string>& class_names) {
  std::string out = "IF ";
  if (rule.empty()) {
    out += "(always)";
  } else {
    for (std::size_t i = 0; i < rule.predicates.size(); ++i) {
      if (i) out += " AND ";
      out += render_predicate(rule.predicates[i]);
    }
  }
  out += " THEN ";
  out += rule.target_class < class_names.size()
             ? class_names[rule.target_class]
             : std::to_string(rule.target_class);
  return out;
}

std::string render_rule_text(const ClusterCandidate& cluster,
                             const std::vector<std::string>& class_names,
                             std::size_t population) {
  const double share = population == 0 ? 0.0
                                       : static_cast<double>(cluster.size) /
                                             static_cast<double>(population);
  return render_rule(cluster.rule, class_names) + " (precision " +
         fixed(cluster.precision, 4) + ", covers " + std::to_string(cluster.size) +
         " rows, " + percent(share) + " of population)";
}

std::string report_to_json(const RunReport& r) {
  const Dataset& source = r.prepared.source;
  const auto& classes = source.class_names;
  const std::string target_name =
      r.target_class < classes.size() ? classes[r.target_class] : "";
  const std::size_t n = source.row_count();

  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool"] = "treeclust";
  j["config"] = config_json(r.config, target_name);

  ordered_json ds;
  ds["rows"] = r.profile.row_count;
  ds["label"] = source.label_name;
  ds["classes"] = r.profile.class_names;
  ds["prevalence"] = r.profile.prevalence;
  ordered_json columns = ordered_json::array();
  for (const auto& c : r.profile.columns) {
    ordered_json x;
    x["column"] = c.column;
    x["kind"] = std::string(to_string(c.kind));
    x["unique_values"] = c.unique_values;
    columns.push_back(x);
  }
  ds["columns"] = columns;
  j["dataset"] = ds;

  ordered_json transforms = ordered_json::array();
  for (const auto& t : r.prepared.log.columns) {
    transforms.push_back(transform_json(t, source));
  }
  j["transforms"] = transforms;
  j["dropped"] = r.prepared.log.dropped;
  j["warnings"] = r.prepared.log.warnings;

  ordered_json clusters = ordered_json::array();
  for (std::size_t i = 0; i < r.extraction.clusters.size(); ++i) {
    const auto& c = r.extraction.clusters[i];
    const TreeNode& node = r.extraction.trees.at(c.tree_index).node(c.node_id);
    ordered_json x;
    x["index"] = i + 1;
    x["tree"] = c.tree_index + 1;
    x["node"] = c.node_id;
    x["rule"] = render_rule_text(c, classes, n);
    ordered_json preds = ordered_json::array();
    for (const auto& p : c.rule.predicates) preds.push_back(predicate_json(p));
    x["predicates"] = preds;
    x["tp"] = c.tp;
    x["fp"] = c.fp;
    x["fn"] = c.fn;
    x["size"] = c.size;
    x["share"] = n == 0 ? 0.0 : static_cast<double>(c.size) / static_cast<double>(n);
    x["gini"] = gini_of(node);
    x["precision"] = c.precision;
    x["recall"] = c.recall;
    x["recall_original"] = c.recall_original;
    x["f1"] = f_beta(c.precision, c.recall, 1.0);
    x["f0_5"] = f_beta(c.precision, c.recall, 0.5);
    x["f_beta"] = c.f_beta;
    x["rows_file"] = "cluster_" + two_digits(i + 1) + ".rows.txt";
    clusters.push_back(x);
  }
  j["clusters"] = clusters;

  ordered_json trees = ordered_json::array();
  for (std::size_t i = 0; i < r.extraction.trees.size(); ++i) {
    ordered_json x = tree_json(r.extraction.trees[i],
                               r.extraction.training_rows[i], r.prepared);
    x["index"] = i + 1;
    trees.push_back(x);
  }
  j["trees"] = trees;

  if (r.stability) {
    ordered_json s;
    s["samples"] = r.stability->params.samples;
    s["fraction"] = r.stability->params.fraction;
    s["seed"] = r.stability->params.seed;
    s["sample_cluster_counts"] = r.stability->sample_cluster_counts;
    ordered_json per = ordered_json::array();
    for (std::size_t i = 0; i < r.stability->clusters.size(); ++i) {
      const auto& c = r.stability->clusters[i];
      ordered_json x;
      x["cluster"] = i + 1;
      x["mean"] = c.mean;
      x["min"] = c.min;
      x["max"] = c.max;
      x["per_sample"] = c.per_sample;
      per.push_back(x);
    }
    s["clusters"] = per;
    j["stability"] = s;
  } else {
    j["stability"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string report_to_text(const RunReport& r) {
  const Dataset& source = r.prepared.source;
  const auto& classes = source.class_names;
  const std::size_t n = source.row_count();
  std::ostringstream out;
  out << "treeclust report\n\n";
  out << "input: " << r.config.input.string() << "\n";
  out << "rows: " << n << "\n";
  out << "classes:";
  for (std::size_t c = 0; c < r.profile.class_names.size(); ++c) {
    out << (c ? ", " : " ") << r.profile.class_names[c] << " "
        << percent(r.profile.prevalence[c]);
  }
  out << "\n";
  if (r.target_class < classes.size()) {
    out << "target class: " << classes[r.target_class] << "\n";
  }
  const auto& e = r.config.extraction;
  out << "beta: " << e.beta << ", depth: " << e.train.max_depth
      << ", clusters: " << e.n_clusters << ", metric: "
      << to_string(e.train.metric) << "\n";

  out << "\ncolumns:\n";
  for (const auto& t : r.prepared.log.columns) {
    out << "  " << t.column << ": " << to_string(t.source_kind);
    if (t.binning) {
      out << ", " << to_string(t.binning->method) << " into "
          << t.binning->bins.size() << " bins";
    }
    if (t.encoding) out << ", ordered by class frequency";
    out << "\n";
  }
  for (const auto& d : r.prepared.log.dropped) out << "  " << d << ": dropped\n";
  for (const auto& w : r.prepared.log.warnings) out << "warning: " << w << "\n";

  out << "\nclusters:\n";
  if (r.extraction.clusters.empty()) out << "  (none)\n";
  for (std::size_t i = 0; i < r.extraction.clusters.size(); ++i) {
    const auto& c = r.extraction.clusters[i];
    const TreeNode& node = r.extraction.trees.at(c.tree_index).node(c.node_id);
    out << "  #" << i + 1 << " (tree " << c.tree_index + 1 << ", node "
        << c.node_id << ")\n";
    out << "    " << render_rule_text(c, classes, n) << "\n";
    out << "    gini " << fixed(gini_of(node), 4) << "  size " << c.size
        << "  tp " << c.tp << "  fp " << c.fp << "  fn " << c.fn << "\n";
    out << "    precision " << fixed(c.precision, 4) << "  recall "
        << fixed(c.recall, 4) << "  recall (all rows) "
        << fixed(c.recall_original, 4) << "\n";
    out << "    F1 " << fixed(f_beta(c.precision, c.recall, 1.0), 4) << "  F0.5 "
        << fixed(f_beta(c.precision, c.recall, 0.5), 4) << "  F" << e.beta << " "
        << fixed(c.f_beta, 4) << "\n";
  }

  if (r.stability) {
    const auto& s = *r.stability;
    out << "\nstability (" << s.params.samples << " samples, fraction "
        << s.params.fraction << ", seed " << s.params.seed << "):\n";
    for (std::size_t i = 0; i < s.clusters.size(); ++i) {
      out << "  #" << i + 1 << "  mean " << fixed(s.clusters[i].mean, 4)
          << "  min " << fixed(s.clusters[i].min, 4) << "  max "
          << fixed(s.clusters[i].max, 4) << "\n";
    }
  }

  out << "\ntimings:\n";
  for (const auto& t : r.timings) {
    out << "  " << t.stage << " " << fixed(t.seconds, 3) << " s\n";
  }
  return out.str();
}

std::vector<std::filesystem::path> write_artifacts(const RunReport& r) {
  namespace fs = std::filesystem;
  const fs::path dir = r.config.out_dir.empty() ? fs::path(".") : r.config.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string());

  std::vector<fs::path> written;
  auto emit = [&](const fs::path& name, const std::string& text) {
    const fs::path path = dir / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path.string());
    f << text;
    if (!f) throw ConfigError("cannot write " + path.string());
    written.push_back(path);
  };

  const Dataset& source = r.prepared.source;
  const auto& classes = source.class_names;
  for (std::size_t i = 0; i < r.extraction.clusters.size(); ++i) {
    const auto& c = r.extraction.clusters[i];
    const std::string stem = "cluster_" + two_digits(i + 1);
    std::string rule = render_rule_text(c, classes, source.row_count()) + "\n";
    for (const auto& p : c.rule.predicates) rule += "  " + render_predicate(p) + "\n";
    emit(stem + ".rule.txt", rule);
    std::string rows;
    for (RowId id : c.row_ids) rows += std::to_string(id) + "\n";
    emit(stem + ".rows.txt", rows);
  }
  if (r.config.write_dot) {
    for (std::size_t i = 0; i < r.extraction.trees.size(); ++i) {
      std::vector<NodeId> highlight;
      for (const auto& c : r.extraction.clusters) {
        if (c.tree_index == i) highlight.push_back(c.node_id);
      }
      DotOptions options;
      options.highlight = highlight;
      options.log = &r.prepared.log;
      options.source = &source;
      emit("tree_" + two_digits(i + 1) + ".dot",
           to_dot(r.extraction.trees[i], r.prepared.working, options));
    }
  }
  if (r.config.write_text) emit("report.txt", report_to_text(r));
  if (r.config.write_json) emit("report.json", report_to_json(r));
  return written;
}

}  // namespace treeclust
