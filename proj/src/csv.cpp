// Copyright 2026 The gridshift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gridshift/csv.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "gridshift/common.hpp"
#include "gridshift/format.hpp"

namespace gridshift {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw ConfigError("write to '" + path + "' failed");
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

void for_each_csv_row(std::string_view text, const std::string& file_name,
                      const std::vector<std::string>& header,
                      const std::function<void(long, const std::vector<std::string_view>&)>& fn) {
  std::size_t pos = 0;
  long line_no = 0;
  bool seen_header = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!seen_header) {
      seen_header = true;
      const auto fields = split(line);
      bool ok = fields.size() == header.size();
      for (std::size_t i = 0; ok && i < fields.size(); ++i) ok = fields[i] == header[i];
      if (!ok) {
        std::string expected;
        for (const auto& h : header) expected += (expected.empty() ? "" : ",") + h;
        throw FormatError(file_name, 0, "", "header must be '" + expected + "'");
      }
      continue;
    }
    ++line_no;
    if (line.empty()) throw FormatError(file_name, line_no, "", "empty line");
    if (line.find('"') != std::string_view::npos) throw FormatError(file_name, line_no, "", "quoted fields are not supported");
    const auto fields = split(line);
    if (fields.size() != header.size()) {
      throw FormatError(file_name, line_no, "",
                        "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
    }
    fn(line_no, fields);
  }
  if (!seen_header) throw FormatError(file_name, 0, "", "missing header");
}

double csv_double(std::string_view field, const std::string& file, long row, const std::string& column) {
  double v = 0.0;
  if (!parse_double(field, v) || !std::isfinite(v)) {
    throw FormatError(file, row, column, "not a finite number: '" + std::string(field) + "'");
  }
  return v;
}

long csv_int(std::string_view field, const std::string& file, long row, const std::string& column) {
  long v = 0;
  if (!parse_int(field, v)) throw FormatError(file, row, column, "not an integer: '" + std::string(field) + "'");
  return v;
}

}  // namespace gridshift
