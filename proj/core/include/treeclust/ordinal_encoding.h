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

#ifndef TREECLUST_ORDINAL_ENCODING_H_
#define TREECLUST_ORDINAL_ENCODING_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "treeclust/dataset.h"
#include "treeclust/types.h"

namespace treeclust {

struct ContingencyRow {
  Code code = 0;
  std::string value;
  std::size_t in_class = 0;
  std::size_t total = 0;
  double frequency = 0;  // in_class / total
};

// Occurrence of each value in a target class. Rows follow dictionary order
// and exclude the missing sentinel.
struct ContingencyTable {
  std::string column;
  ClassCode target_class = 0;
  std::vector<ContingencyRow> rows;
};

struct OrdinalEncoding {
  std::string column;
  // Old code -> new code; permutation[0] == 0.
  std::vector<Code> permutation;
  // Dictionary after re-encoding.
  std::vector<std::string> order;
};

struct EncodedColumn {
  ContingencyTable table;
  OrdinalEncoding encoding;
  Column column;
};

ContingencyTable build_contingency(const Column& column,
                                   std::span<const ClassCode> labels,
                                   ClassCode target_class);

// Sorts values by their frequency in `target_class`, descending, keeping
// the prior dictionary order among ties. The result is symbolic-ordinal.
EncodedColumn encode_by_class_frequency(const Column& column,
                                        std::span<const ClassCode> labels,
                                        ClassCode target_class);

std::vector<Code> invert_permutation(std::span<const Code> permutation);

}  // namespace treeclust

#endif  // TREECLUST_ORDINAL_ENCODING_H_
