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

#ifndef TREECLUST_JARO_WINKLER_H_
#define TREECLUST_JARO_WINKLER_H_

#include <string_view>

namespace treeclust {

// Jaro similarity of two byte strings, in [0, 1].
double jaro(std::string_view a, std::string_view b);

// Jaro-Winkler similarity with prefix scale 0.1 and a common prefix of at
// most 4 characters. The prefix boost applies only above a Jaro score of 0.7.
double jaro_winkler(std::string_view a, std::string_view b);

inline double jaro_winkler_distance(std::string_view a, std::string_view b) {
  return 1.0 - jaro_winkler(a, b);
}

}  // namespace treeclust

#endif  // TREECLUST_JARO_WINKLER_H_
