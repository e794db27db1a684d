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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "treeclust/report.h"

namespace treeclust {
namespace {

namespace fs = std::filesystem;

Dataset passengers() {
  CsvTable t{{"age", "sex", "class", "survived"}};
  for (int i = 0; i < 120; ++i) {
    const bool female = i % 2 == 0;
    const int cls = 1 + i % 3;
    const bool yes = (female && cls < 3) || (!female && i % 7 == 0);
    t.push_back({i % 11 == 0 ? "" : std::to_string(5 + i % 60),
                 female ? "female" : "male", std::to_string(cls), yes ? "yes" : "no"});
  }
  return dataset_from_table(t, {});
}

RunConfig small_config() {
  RunConfig c;
  c.extraction.train.max_depth = 3;
  c.extraction.n_clusters = 2;
  c.extraction.beta = 0.5;
  return c;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("treeclust_report_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(RunConfig, ParsesKeysAndKeepsBase) {
  RunConfig base;
  base.extraction.n_clusters = 7;
  const auto c = parse_run_config(R"({
    "input": "x.csv", "label": "survived", "class": "yes", "beta": 0.5,
    "depth": 4, "metric": "entropy", "missing_tokens": ["?"],
    "preprocess": {"numeric_method": "numeric-equal-width", "numeric_bins": 4,
                   "reorder_symbolic": false,
                   "columns": {"age": {"method": "numeric-percentile", "bins": 5}}},
    "stability": {"samples": 3, "fraction": 0.5, "seed": 9},
    "out": "o"})", base);
  EXPECT_EQ(c.input, "x.csv");
  EXPECT_EQ(c.load.label, "survived");
  EXPECT_EQ(c.target_class, "yes");
  EXPECT_DOUBLE_EQ(c.extraction.beta, 0.5);
  EXPECT_EQ(c.extraction.n_clusters, 7u);
  EXPECT_EQ(c.extraction.train.max_depth, 4);
  EXPECT_EQ(c.extraction.train.metric, ImpurityMetric::kEntropy);
  EXPECT_EQ(c.load.missing_tokens, (std::vector<std::string>{"?"}));
  EXPECT_EQ(c.extraction.preprocess.numeric_bins, 4u);
  EXPECT_FALSE(c.extraction.preprocess.reorder_symbolic);
  EXPECT_EQ(c.extraction.preprocess.columns.at("age").bins, 5u);
  EXPECT_TRUE(c.stability);
  EXPECT_EQ(c.stability_params.samples, 3u);
  EXPECT_EQ(c.stability_params.seed, 9u);
  EXPECT_EQ(c.out_dir, "o");
}

TEST(RunConfig, Rejections) {
  EXPECT_THROW(parse_run_config("[1"), ConfigError);
  EXPECT_THROW(parse_run_config("[]"), ConfigError);
  EXPECT_THROW(parse_run_config(R"({"metric": "mse"})"), ConfigError);
  EXPECT_THROW(parse_run_config(R"({"depth": "deep"})"), ConfigError);
  EXPECT_THROW(parse_run_config(R"({"delimiter": ";;"})"), ConfigError);
  EXPECT_THROW(load_run_config("/nonexistent/run.json"), ConfigError);
  RunConfig c;
  c.extraction.beta = 0;
  EXPECT_THROW(validate(c), ConfigError);
  c = RunConfig{};
  c.extraction.train.max_depth = 0;
  EXPECT_THROW(validate(c), ConfigError);
  c = RunConfig{};
  c.stability = true;
  c.stability_params.fraction = 2;
  EXPECT_THROW(validate(c), ConfigError);
}

TEST(Run, StagesAndExitCodes) {
  const auto ds = passengers();
  auto c = small_config();
  const auto r = run(c, ds);
  EXPECT_EQ(r.target_class, ds.class_code("yes"));
  EXPECT_FALSE(r.extraction.clusters.empty());
  std::vector<std::string> stages;
  for (const auto& t : r.timings) stages.push_back(t.stage);
  EXPECT_EQ(stages, (std::vector<std::string>{"config", "profile", "preprocess", "extract"}));

  c.target_class = "maybe";
  try {
    run(c, ds);
    FAIL() << "unknown class accepted";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "config");
    EXPECT_EQ(e.exit_code(), kExitConfig);
  }
  c = small_config();
  c.input = "/nonexistent/data.csv";
  try {
    run(c);
    FAIL() << "missing input accepted";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "load");
    EXPECT_EQ(e.exit_code(), kExitData);
  }
}

TEST(Run, ZeroClustersStopsAfterPreprocessing) {
  auto c = small_config();
  c.extraction.n_clusters = 0;
  const auto r = run(c, passengers());
  EXPECT_TRUE(r.extraction.clusters.empty());
  EXPECT_TRUE(r.extraction.trees.empty());
  EXPECT_EQ(r.timings.back().stage, "preprocess");
}

TEST(RenderRule, Forms) {
  Rule empty;
  empty.target_class = 1;
  EXPECT_EQ(render_rule(empty, {"no", "yes"}), "IF (always) THEN yes");
  Rule r;
  r.target_class = 0;
  Predicate a;
  a.attribute = "age";
  a.op = PredicateOp::kLessEqual;
  a.upper = 30;
  a.upper_text = "30";
  Predicate b;
  b.attribute = "sex";
  b.op = PredicateOp::kEqual;
  b.values = {"female"};
  r.predicates = {a, b};
  EXPECT_EQ(render_rule(r, {"no", "yes"}), "IF age <= 30 AND sex = female THEN no");
  ClusterCandidate c;
  c.rule = r;
  c.precision = 0.75;
  c.size = 20;
  EXPECT_EQ(render_rule_text(c, {"no", "yes"}, 80),
            "IF age <= 30 AND sex = female THEN no (precision 0.7500, covers 20 rows, "
            "25.0% of population)");
}

TEST(ReportJson, DeterministicAndComplete) {
  const auto ds = passengers();
  auto c = small_config();
  c.stability = true;
  c.stability_params.samples = 3;
  c.stability_params.num_threads = 2;
  const auto a = report_to_json(run(c, ds));
  c.stability_params.num_threads = 1;
  const auto b = report_to_json(run(c, ds));
  EXPECT_EQ(a, b);
  const auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j.at("schema_version"), kReportSchemaVersion);
  for (const char* key : {"tool", "config", "dataset", "transforms", "clusters", "trees",
                          "stability"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_FALSE(j.contains("timings"));
  EXPECT_EQ(j.at("dataset").at("rows"), 120);
  const auto& cl = j.at("clusters");
  ASSERT_FALSE(cl.empty());
  for (const auto& cluster : cl) {
    const double p = cluster.at("precision");
    const double r = cluster.at("recall");
    const double beta = 0.5;
    EXPECT_NEAR(cluster.at("f_beta").get<double>(),
                p + r == 0 ? 0 : (1 + beta * beta) * p * r / (beta * beta * p + r), 1e-9);
    EXPECT_EQ(cluster.at("tp").get<int>() + cluster.at("fp").get<int>(),
              cluster.at("size").get<int>());
  }
  EXPECT_EQ(j.at("stability").at("clusters").size(), cl.size());

  c.stability = false;
  EXPECT_TRUE(nlohmann::json::parse(report_to_json(run(c, ds))).at("stability").is_null());
}

TEST(Artifacts, FilesMatchTheReport) {
  const auto ds = passengers();
  auto c = small_config();
  c.out_dir = scratch("artifacts");
  const auto r = run(c, ds);
  const auto written = write_artifacts(r);
  for (const auto& p : written) EXPECT_TRUE(fs::exists(p)) << p;
  EXPECT_TRUE(fs::exists(c.out_dir / "report.json"));
  EXPECT_TRUE(fs::exists(c.out_dir / "report.txt"));
  EXPECT_EQ(slurp(c.out_dir / "report.json"), report_to_json(r));
  const std::string text = slurp(c.out_dir / "report.txt");
  EXPECT_NE(text.find("IF "), std::string::npos);
  for (std::size_t k = 0; k < r.extraction.clusters.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "cluster_%02zu.rows.txt", k + 1);
    std::istringstream rows(slurp(c.out_dir / name));
    RowIds ids;
    for (RowId id; rows >> id;) ids.push_back(id);
    const auto& cluster = r.extraction.clusters[k];
    EXPECT_EQ(ids, cluster.row_ids);
    EXPECT_EQ(apply_rule(cluster.rule, ds, r.extraction.training_rows[k]), ids);
    std::snprintf(name, sizeof name, "tree_%02zu.dot", k + 1);
    EXPECT_TRUE(fs::exists(c.out_dir / name)) << name;
  }
  fs::remove_all(c.out_dir);
}

}  // namespace
}  // namespace treeclust
