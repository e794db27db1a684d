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

#ifndef TREECLUST_TYPES_H_
#define TREECLUST_TYPES_H_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace treeclust {

// Ordinal code of a cell. Code 0 is the missing sentinel; code i > 0 refers
// to dictionary entry i - 1 of its column.
using Code = std::uint32_t;
inline constexpr Code kMissingCode = 0;

using ClassCode = std::uint32_t;
using RowId = std::uint32_t;
using RowIds = std::vector<RowId>;
using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

// Invalid user configuration: unknown columns, out-of-range parameters.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data that cannot be used: unreadable files, malformed rows.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace treeclust

#endif  // TREECLUST_TYPES_H_
