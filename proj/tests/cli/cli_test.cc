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
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "treeclust/report.h"

namespace treeclust {
namespace {

namespace fs = std::filesystem;

const fs::path kData = TREECLUST_TEST_DATA_DIR;

int treeclust(const std::string& args) {
  const std::string command =
      std::string("\"") + TREECLUST_BINARY + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("treeclust_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string titanic() { return "--input \"" + (kData / "titanic.csv").string() + "\""; }

TEST(Cli, ExitCodes) {
  EXPECT_EQ(treeclust("--help"), kExitOk);
  EXPECT_EQ(treeclust(""), kExitConfig);
  EXPECT_EQ(treeclust("extract --beta -1 " + titanic()), kExitConfig);
  EXPECT_EQ(treeclust("extract --reorder-symbolic maybe " + titanic()), kExitConfig);
  EXPECT_EQ(treeclust("extract"), kExitConfig);
  EXPECT_EQ(treeclust("extract --class nobody --out " + scratch("x").string() + " " + titanic()),
            kExitConfig);
  EXPECT_EQ(treeclust("extract --input /nonexistent/file.csv"), kExitData);
  const fs::path bad = scratch("bad");
  fs::create_directories(bad);
  std::ofstream(bad / "ragged.csv") << "a,b,y\n1,2,0\n3\n";
  EXPECT_EQ(treeclust("extract --input " + (bad / "ragged.csv").string()), kExitData);
  std::ofstream(bad / "run.json") << "{\"metric\": \"mse\"}";
  EXPECT_EQ(treeclust("extract --config " + (bad / "run.json").string() + " " + titanic()),
            kExitConfig);
  fs::remove_all(bad);
}

TEST(Cli, ProfileAndExportDot) {
  EXPECT_EQ(treeclust("profile " + titanic()), kExitOk);
  const fs::path out = scratch("dot");
  EXPECT_EQ(treeclust("export-dot --out " + out.string() + " " + titanic()), kExitOk);
  EXPECT_TRUE(fs::exists(out / "tree_01.dot"));
  EXPECT_FALSE(fs::exists(out / "report.json"));
  EXPECT_EQ(treeclust("export-dot --tree 99 " + titanic()), kExitConfig);
  fs::remove_all(out);
}

TEST(Cli, ReportsAreByteIdenticalAcrossRuns) {
  const fs::path a = scratch("a"), b = scratch("b");
  const std::string flags = " --samples 5 --seed 3 --beta 0.5 --depth 4 " + titanic();
  ASSERT_EQ(treeclust("stability --out " + a.string() + flags), kExitOk);
  ASSERT_EQ(treeclust("stability --threads 4 --out " + b.string() + flags), kExitOk);
  const std::string ja = slurp(a / "report.json");
  EXPECT_FALSE(ja.empty());
  EXPECT_EQ(ja, slurp(b / "report.json"));
  for (const auto& entry : fs::directory_iterator(a)) {
    if (entry.path().filename() == "report.txt") continue;
    EXPECT_EQ(slurp(entry.path()), slurp(b / entry.path().filename())) << entry.path();
  }
  const auto j = nlohmann::json::parse(ja);
  EXPECT_EQ(j.at("schema_version"), kReportSchemaVersion);
  EXPECT_EQ(j.at("stability").at("samples"), 5);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Cli, RowListsMatchRulesOnTheInput) {
  const fs::path out = scratch("rows");
  ASSERT_EQ(treeclust("extract --clusters 4 --bins 6 --out " + out.string() + " " + titanic()),
            kExitOk);
  RunConfig c;
  c.input = kData / "titanic.csv";
  c.extraction.n_clusters = 4;
  c.extraction.preprocess.numeric_bins = 6;
  const RunReport r = run(c);
  const Dataset input = load_csv(c.input);
  ASSERT_FALSE(r.extraction.clusters.empty());
  for (std::size_t k = 0; k < r.extraction.clusters.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "cluster_%02zu.rows.txt", k + 1);
    std::istringstream rows(slurp(out / name));
    RowIds listed;
    for (RowId id; rows >> id;) listed.push_back(id);
    EXPECT_EQ(apply_rule(r.extraction.clusters[k].rule, input, r.extraction.training_rows[k]),
              listed)
        << name;
    std::snprintf(name, sizeof name, "cluster_%02zu.rule.txt", k + 1);
    EXPECT_EQ(slurp(out / name).rfind("IF ", 0), 0u);
  }
  fs::remove_all(out);
}

TEST(Cli, SynthWritesDatasetAndTruth) {
  const fs::path out = scratch("synth");
  ASSERT_EQ(treeclust("synth --evaluate --depth 3 --input \"" + (kData / "adult.csv").string() +
                      "\" --spec \"" + (kData / "adult_synth.json").string() + "\" --out " +
                      out.string()),
            kExitOk);
  EXPECT_TRUE(fs::exists(out / "synthetic.csv"));
  EXPECT_TRUE(fs::exists(out / "group_01.rows.txt"));
  const auto j = nlohmann::json::parse(slurp(out / "synth.json"));
  EXPECT_EQ(j.at("rows"), 32561);
  EXPECT_EQ(j.at("groups").size(), 4u);
  EXPECT_GE(j.at("recovery").at(0).at("jaccard").get<double>(), 0.9);
  LoadOptions load;
  load.missing_tokens = {""};
  const Dataset back = load_csv(out / "synthetic.csv", load);
  EXPECT_EQ(back.row_count(), 32561u);
  EXPECT_EQ(back.label_name, "interested");
  EXPECT_EQ(treeclust("synth --input \"" + (kData / "adult.csv").string() + "\""), kExitConfig);
  fs::remove_all(out);
}

}  // namespace
}  // namespace treeclust
