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

#include "treeclust/datetime.h"

#include <cctype>

namespace treeclust {
namespace {

bool read_digits(std::string_view text, std::size_t& pos, int min_digits,
                 int max_digits, int& value) {
  int n = 0;
  value = 0;
  while (n < max_digits && pos < text.size() &&
         std::isdigit(static_cast<unsigned char>(text[pos]))) {
    value = value * 10 + (text[pos] - '0');
    ++pos;
    ++n;
  }
  return n >= min_digits;
}

bool is_leap(int year) {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

unsigned days_in_month(int year, unsigned month) {
  static constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30,
                                       31, 31, 30, 31, 30, 31};
  return month == 2 && is_leap(year) ? 29 : kDays[month - 1];
}

}  // namespace

// Howard Hinnant's days_from_civil.
std::int64_t days_from_civil(int year, unsigned month, unsigned day) {
  year -= month <= 2;
  const std::int64_t era = (year >= 0 ? year : year - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(year - era * 400);
  const unsigned doy = (153 * (month > 2 ? month - 3 : month + 9) + 2) / 5 +
                       day - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

std::optional<std::int64_t> parse_datetime(std::string_view text,
                                           std::string_view pattern) {
  int year = -1, month = -1, day = -1, hour = 0, minute = 0, second = 0;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] != '%' || i + 1 == pattern.size()) {
      if (pos >= text.size() || text[pos] != pattern[i]) return std::nullopt;
      ++pos;
      continue;
    }
    const char spec = pattern[++i];
    bool ok = false;
    switch (spec) {
      case 'Y': ok = read_digits(text, pos, 4, 4, year); break;
      case 'm': ok = read_digits(text, pos, 1, 2, month); break;
      case 'd': ok = read_digits(text, pos, 1, 2, day); break;
      case 'H': ok = read_digits(text, pos, 1, 2, hour); break;
      case 'M': ok = read_digits(text, pos, 1, 2, minute); break;
      case 'S': ok = read_digits(text, pos, 1, 2, second); break;
      case '%':
        ok = pos < text.size() && text[pos] == '%';
        ++pos;
        break;
      default: return std::nullopt;
    }
    if (!ok) return std::nullopt;
  }
  if (pos != text.size()) return std::nullopt;
  if (hour > 23 || minute > 59 || second > 60) return std::nullopt;
  const std::int64_t seconds = hour * 3600 + minute * 60 + second;

  const bool has_date = year >= 0 || month >= 0 || day >= 0;
  if (!has_date) return seconds;
  if (year < 0 || month < 1 || month > 12 || day < 1) return std::nullopt;
  if (static_cast<unsigned>(day) >
      days_in_month(year, static_cast<unsigned>(month))) {
    return std::nullopt;
  }
  return days_from_civil(year, static_cast<unsigned>(month),
                         static_cast<unsigned>(day)) *
             86400 +
         seconds;
}

const std::vector<std::string>& default_datetime_patterns() {
  static const std::vector<std::string> kPatterns = {
      "%Y-%m-%dT%H:%M:%S", "%Y-%m-%d %H:%M:%S", "%Y-%m-%dT%H:%M",
      "%Y-%m-%d %H:%M",    "%Y-%m-%d",          "%H:%M:%S",
      "%H:%M",
  };
  return kPatterns;
}

}  // namespace treeclust
