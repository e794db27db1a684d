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

#ifndef TREECLUST_CSV_H_
#define TREECLUST_CSV_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace treeclust {

struct CsvOptions {
  char delimiter = ',';
  // Strip ASCII blanks around unquoted fields.
  bool trim = true;
};

using CsvRow = std::vector<std::string>;
using CsvTable = std::vector<CsvRow>;

// RFC-4180 style parsing: quoted fields may contain delimiters, doubled
// quotes and line breaks. Blank lines are skipped. A leading UTF-8 BOM is
// ignored. Throws DataError on an unterminated quoted field.
CsvTable parse_csv(std::string_view text, const CsvOptions& options = {});

// Throws DataError when the file cannot be read.
CsvTable read_csv_file(const std::filesystem::path& path,
                       const CsvOptions& options = {});

std::string quote_csv_field(std::string_view field, char delimiter = ',');
void write_csv_row(std::ostream& out, const CsvRow& row, char delimiter = ',');

}  // namespace treeclust

#endif  // TREECLUST_CSV_H_
