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

#include "treeclust/synth.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "treeclust/random.h"
#include "util.h"

namespace treeclust {
namespace {

using nlohmann::json;

std::string value_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return format_number(v.get<double>());
  throw ConfigError("predicate value must be a string or number");
}

double value_number(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    if (auto x = parse_number(v.get<std::string>())) return *x;
  }
  throw ConfigError("interval bound must be numeric");
}

Predicate parse_predicate(const json& j) {
  if (!j.is_object()) throw ConfigError("predicate must be an object");
  Predicate p;
  p.attribute = j.at("attribute").get<std::string>();
  const auto op = parse_predicate_op(j.at("op").get<std::string>());
  if (!op) throw ConfigError("unknown predicate op in rule on '" + p.attribute + "'");
  p.op = *op;
  switch (p.op) {
    case PredicateOp::kLessEqual:
      p.upper = value_number(j.at("value"));
      p.upper_text = format_number(*p.upper);
      break;
    case PredicateOp::kGreater:
      p.lower = value_number(j.at("value"));
      p.lower_text = format_number(*p.lower);
      break;
    case PredicateOp::kBetween:
      p.lower = value_number(j.at("lower"));
      p.upper = value_number(j.at("upper"));
      if (!(*p.lower < *p.upper)) {
        throw ConfigError("interval on '" + p.attribute + "' is empty");
      }
      p.lower_text = format_number(*p.lower);
      p.upper_text = format_number(*p.upper);
      break;
    case PredicateOp::kEqual:
    case PredicateOp::kNotEqual:
      p.values.push_back(value_text(j.at("value")));
      break;
    case PredicateOp::kIn:
    case PredicateOp::kNotIn:
      for (const auto& v : j.at("values")) p.values.push_back(value_text(v));
      if (p.values.empty()) {
        throw ConfigError("empty value set on '" + p.attribute + "'");
      }
      break;
    case PredicateOp::kIsMissing:
    case PredicateOp::kNotMissing:
      break;
  }
  p.matches_missing = p.op == PredicateOp::kNotEqual ||
                      p.op == PredicateOp::kNotIn ||
                      p.op == PredicateOp::kIsMissing;
  if (j.contains("missing")) p.matches_missing = j.at("missing").get<bool>();
  return p;
}

void check_rule(const Rule& rule, const Dataset& ds, const std::string& group) {
  for (const auto& p : rule.predicates) {
    const auto index = ds.column_index(p.attribute);
    if (!index) {
      throw ConfigError("group '" + group + "' names unknown column '" +
                        p.attribute + "'");
    }
    const Column& column = ds.columns[*index];
    const bool interval = p.op == PredicateOp::kLessEqual ||
                          p.op == PredicateOp::kGreater ||
                          p.op == PredicateOp::kBetween;
    if (interval && !has_natural_values(column.kind)) {
      throw ConfigError("group '" + group + "' compares non-numeric column '" +
                        p.attribute + "'");
    }
    if (!interval && (is_symbolic(column.kind) ||
                      column.kind == ColumnKind::kBoolean)) {
      for (const auto& v : p.values) {
        if (std::find(column.dictionary.begin(), column.dictionary.end(), v) ==
            column.dictionary.end()) {
          throw ConfigError("group '" + group + "' names unknown value '" + v +
                            "' of column '" + p.attribute + "'");
        }
      }
    }
    if (!interval && column.kind == ColumnKind::kNumeric) {
      for (const auto& v : p.values) {
        if (!parse_number(v)) {
          throw ConfigError("group '" + group + "' compares numeric column '" +
                            p.attribute + "' with '" + v + "'");
        }
      }
    }
  }
}

}  // namespace

SynthSpec parse_synth_spec(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("synth spec is not valid JSON: ") + e.what());
  }
  try {
    SynthSpec spec;
    spec.seed = j.value("seed", spec.seed);
    spec.label_name = j.value("label", spec.label_name);
    spec.positive_label = j.value("positive", spec.positive_label);
    spec.negative_label = j.value("negative", spec.negative_label);
    if (j.contains("shifts")) {
      for (const auto& [column, constant] : j.at("shifts").items()) {
        spec.shifts[column] = constant.get<double>();
      }
    }
    for (const auto& g : j.at("groups")) {
      HiddenGroupSpec group;
      group.name = g.value("name", "group " + std::to_string(spec.groups.size() + 1));
      group.target_share = g.value("share", 0.0);
      group.p_in = g.value("p_in", group.p_in);
      group.p_out = g.value("p_out", group.p_out);
      for (const auto& p : g.at("rule")) {
        group.rule.predicates.push_back(parse_predicate(p));
      }
      group.rule.target_class = 1;
      spec.groups.push_back(std::move(group));
    }
    return spec;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad synth spec: ") + e.what());
  }
}

SynthSpec load_synth_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open synth spec " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_synth_spec(text.str());
}

void shift_column(Dataset& ds, std::string_view name, double constant) {
  const auto index = ds.column_index(name);
  if (!index) throw ConfigError("cannot shift unknown column '" + std::string(name) + "'");
  Column& column = ds.columns[*index];
  if (column.kind != ColumnKind::kNumeric) {
    throw ConfigError("cannot shift non-numeric column '" + column.name + "'");
  }
  for (std::size_t i = 0; i < column.values.size(); ++i) {
    column.values[i] -= constant;
    column.dictionary[i] = format_number(column.values[i]);
  }
}

PlantingResult plant_groups(const Dataset& features,
                            std::span<const HiddenGroupSpec> groups,
                            std::uint64_t seed, const std::string& label_name,
                            const std::string& positive_label,
                            const std::string& negative_label) {
  if (groups.empty()) throw ConfigError("no hidden groups to plant");
  if (positive_label == negative_label) {
    throw ConfigError("positive and negative labels must differ");
  }
  for (const auto& g : groups) {
    if (!(0 <= g.p_out && g.p_out < g.p_in && g.p_in <= 1)) {
      throw ConfigError("group '" + g.name + "' needs 0 <= p_out < p_in <= 1");
    }
    check_rule(g.rule, features, g.name);
  }

  const std::size_t n = features.row_count();
  PlantingResult result;
  for (const auto& g : groups) {
    result.truth.push_back(apply_rule(g.rule, features));
    result.shares.push_back(n == 0 ? 0.0
                                   : static_cast<double>(result.truth.back().size()) /
                                         static_cast<double>(n));
  }

  // Index of the first matching group per row, groups.size() for none.
  std::vector<std::size_t> first(n, groups.size());
  std::vector<std::uint8_t> hits(n, 0);
  for (std::size_t g = groups.size(); g-- > 0;) {
    for (RowId r : result.truth[g]) {
      first[r] = g;
      if (hits[r] < 2) ++hits[r];
    }
  }
  std::size_t overlapping = 0;
  for (auto h : hits) overlapping += h > 1;
  result.overlap_fraction =
      n == 0 ? 0.0 : static_cast<double>(overlapping) / static_cast<double>(n);
  if (overlapping > 0) {
    result.warnings.push_back(std::to_string(overlapping) +
                              " rows match more than one group; the first "
                              "matching group sets their label");
  }

  Dataset& out = result.labelled;
  out.columns = features.columns;
  out.label_name = label_name;
  out.class_names = {negative_label, positive_label};
  out.labels.resize(n);
  Rng rng(seed);
  // Rows outside every group take the first group's p_out.
  const double p_out = groups.front().p_out;
  for (std::size_t r = 0; r < n; ++r) {
    const double p = first[r] < groups.size() ? groups[first[r]].p_in : p_out;
    out.labels[r] = rng.bernoulli(p) ? 1 : 0;
  }
  return result;
}

PlantingResult plant(const Dataset& features, const SynthSpec& spec) {
  Dataset shifted = features;
  for (const auto& [column, constant] : spec.shifts) {
    shift_column(shifted, column, constant);
  }
  return plant_groups(shifted, spec.groups, spec.seed, spec.label_name,
                      spec.positive_label, spec.negative_label);
}

RecoveryReport evaluate_recovery(std::span<const RowIds> clusters,
                                 std::span<const RowIds> truth) {
  RecoveryReport report;
  for (const auto& t : truth) {
    std::vector<RecoveryCell> row;
    for (const auto& c : clusters) {
      RowIds common;
      std::set_intersection(c.begin(), c.end(), t.begin(), t.end(),
                            std::back_inserter(common));
      const double k = static_cast<double>(common.size());
      const double uni = static_cast<double>(c.size() + t.size()) - k;
      RecoveryCell cell;
      cell.jaccard = uni == 0 ? 1.0 : k / uni;
      cell.precision = c.empty() ? 0.0 : k / static_cast<double>(c.size());
      cell.recall = t.empty() ? 0.0 : k / static_cast<double>(t.size());
      row.push_back(cell);
    }
    report.cells.push_back(std::move(row));
  }

  std::vector<RecoveryMatch> pairs;
  for (std::size_t t = 0; t < truth.size(); ++t) {
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      if (report.cells[t][c].jaccard > 0) pairs.push_back({t, c, report.cells[t][c]});
    }
  }
  // Ties fall back to truth index, then cluster contents, so the assignment
  // does not depend on cluster order.
  std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    if (a.score.jaccard != b.score.jaccard) return a.score.jaccard > b.score.jaccard;
    if (a.truth != b.truth) return a.truth < b.truth;
    return clusters[a.cluster] < clusters[b.cluster];
  });
  std::vector<bool> truth_used(truth.size()), cluster_used(clusters.size());
  for (const auto& m : pairs) {
    if (truth_used[m.truth] || cluster_used[m.cluster]) continue;
    truth_used[m.truth] = cluster_used[m.cluster] = true;
    report.matches.push_back(m);
  }
  return report;
}

}  // namespace treeclust
