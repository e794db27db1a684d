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

#include "treeclust/csv.h"

#include <fstream>
#include <ostream>
#include <sstream>

#include "treeclust/types.h"

namespace treeclust {
namespace {

bool is_blank(char c) { return c == ' ' || c == '\t'; }

std::string_view trim_blanks(std::string_view s) {
  while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

CsvTable parse_csv(std::string_view text, const CsvOptions& options) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  CsvTable table;
  CsvRow row;
  std::string field;
  bool quoted = false;      // current field was quoted
  bool in_quotes = false;   // inside the quoted section
  bool row_has_content = false;
  std::size_t line = 1;
  std::size_t quote_line = 0;

  auto end_field = [&] {
    row.push_back(quoted || !options.trim ? std::move(field)
                                          : std::string(trim_blanks(field)));
    field.clear();
    quoted = false;
  };
  auto end_row = [&] {
    end_field();
    // A line holding nothing but blanks is skipped.
    if (row_has_content) table.push_back(std::move(row));
    row.clear();
    row_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && trim_blanks(field).empty() && !quoted) {
      field.clear();
      quoted = true;
      in_quotes = true;
      quote_line = line;
      row_has_content = true;
    } else if (c == options.delimiter) {
      end_field();
      row_has_content = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_row();
      ++line;
    } else {
      if (!quoted) field.push_back(c);
      if (!is_blank(c)) row_has_content = true;
    }
  }
  if (in_quotes) {
    throw DataError("unterminated quoted field starting on line " +
                    std::to_string(quote_line));
  }
  if (row_has_content || !field.empty()) end_row();
  return table;
}

CsvTable read_csv_file(const std::filesystem::path& path,
                       const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw DataError("error reading '" + path.string() + "'");
  return parse_csv(buffer.view(), options);
}

std::string quote_csv_field(std::string_view field, char delimiter) {
  const bool needs_quotes =
      field.find_first_of(std::string{'"', '\n', '\r', delimiter}) !=
          std::string_view::npos ||
      (!field.empty() && (is_blank(field.front()) || is_blank(field.back())));
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv_row(std::ostream& out, const CsvRow& row, char delimiter) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << delimiter;
    out << quote_csv_field(row[i], delimiter);
  }
  out << '\n';
}

}  // namespace treeclust
