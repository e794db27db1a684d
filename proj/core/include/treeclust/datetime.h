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

#ifndef TREECLUST_DATETIME_H_
#define TREECLUST_DATETIME_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace treeclust {

// Patterns use a strptime-like subset: %Y (4 digits), %m, %d, %H, %M, %S
// (1-2 digits) and literal characters. Matching is over the whole text.
//
// Patterns containing a date yield seconds since 1970-01-01T00:00:00 (UTC,
// proleptic Gregorian). Time-of-day patterns yield seconds since midnight.
std::optional<std::int64_t> parse_datetime(std::string_view text,
                                           std::string_view pattern);

// ISO-8601 date, date-time and time-of-day forms, most specific first.
const std::vector<std::string>& default_datetime_patterns();

std::int64_t days_from_civil(int year, unsigned month, unsigned day);

}  // namespace treeclust

#endif  // TREECLUST_DATETIME_H_
