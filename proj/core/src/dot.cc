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

#include "treeclust/dot.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "treeclust/rule.h"

namespace treeclust {
namespace {

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

std::string fixed4(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

std::string working_test(const SplitTest& test, const Dataset& ds) {
  const Column& column = ds.columns.at(test.attribute);
  if (test.pivot == kMissingCode) return column.name + " is missing";
  const std::string& value = column.decode(test.pivot);
  return column.name +
         (test.op == SplitOperator::kOrdinal ? " <= " : " = ") + value;
}

}  // namespace

std::string to_dot(const DecisionTree& tree, const Dataset& ds,
                   const DotOptions& options) {
  std::ostringstream out;
  out << "digraph tree {\n"
      << "  node [shape=box, fontname=\"helvetica\"];\n"
      << "  edge [fontname=\"helvetica\"];\n";
  for (const TreeNode& node : tree.nodes()) {
    std::string label = "#" + std::to_string(node.id) + "\n";
    if (node.split) {
      label += options.log && options.source
                   ? render_predicate(split_predicate(*node.split, true,
                                                      *options.log,
                                                      *options.source))
                   : working_test(*node.split, ds);
      label += "\n";
    }
    label += "impurity = " + fixed4(node.impurity) + "\n";
    label += "samples = " + std::to_string(node.samples) + "\n";
    label += "value = [";
    for (std::size_t c = 0; c < node.class_counts.size(); ++c) {
      if (c) label += ", ";
      label += std::to_string(node.class_counts[c]);
    }
    label += "]\n";
    if (node.decision < ds.class_names.size()) {
      label += "class = " + ds.class_names[node.decision];
    }
    const bool bold = std::find(options.highlight.begin(),
                                options.highlight.end(),
                                node.id) != options.highlight.end();
    out << "  n" << node.id << " [label=\"" << escape(label) << "\"";
    if (bold) out << ", style=\"filled,bold\", fillcolor=\"#ffd966\", penwidth=2";
    out << "];\n";
  }
  for (const TreeNode& node : tree.nodes()) {
    if (node.left != kNoNode) {
      out << "  n" << node.id << " -> n" << node.left << " [label=\"true\"];\n";
    }
    if (node.right != kNoNode) {
      out << "  n" << node.id << " -> n" << node.right << " [label=\"false\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace treeclust
