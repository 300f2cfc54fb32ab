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

#ifndef GRIDSHIFT_CSV_HPP
#define GRIDSHIFT_CSV_HPP

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace gridshift {

/// Whole file as bytes; throws ConfigError when it cannot be opened.
std::string read_file(const std::string& path);
/// Writes bytes verbatim (LF endings are the caller's).
void write_file(const std::string& path, std::string_view content);

/// Plain comma-separated text without quoting, as written by this library.
/// Calls fn(row_number, fields) for each data row; row 1 is the first line
/// after the header.  Throws FormatError on a header mismatch, a wrong field
/// count or a quote character.
void for_each_csv_row(std::string_view text, const std::string& file_name,
                      const std::vector<std::string>& header,
                      const std::function<void(long, const std::vector<std::string_view>&)>& fn);

/// Field parsers that throw FormatError with the location.
double csv_double(std::string_view field, const std::string& file, long row, const std::string& column);
long csv_int(std::string_view field, const std::string& file, long row, const std::string& column);

}  // namespace gridshift

#endif  // GRIDSHIFT_CSV_HPP
