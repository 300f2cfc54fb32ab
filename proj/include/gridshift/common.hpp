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

#ifndef GRIDSHIFT_COMMON_HPP
#define GRIDSHIFT_COMMON_HPP

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace gridshift {

inline constexpr int kHoursPerDay = 24;

/// One value per hour of a day.
template <typename Scalar>
using Hourly = Eigen::Matrix<Scalar, kHoursPerDay, 1>;
using HourlyVector = Hourly<double>;

/// Entity-by-hour table (rows are buses, generators or lines).
using HourlyTable = Eigen::Matrix<double, Eigen::Dynamic, kHoursPerDay>;

/// Shape or dimension mismatch in an input object.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid run configuration (unknown ids, bad flags, missing inputs).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A day that cannot be served with the available supply and network.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, int hour)
      : std::runtime_error(what), hour_(hour) {}
  /// Hour of day that fails, or -1 when the infeasibility couples hours.
  int hour() const noexcept { return hour_; }

 private:
  int hour_;
};

/// The LP engine could not certify a solution.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the location.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& file, long row, const std::string& column,
              const std::string& message)
      : std::runtime_error(file + ":" + std::to_string(row) +
                           (column.empty() ? "" : " [" + column + "]") + ": " +
                           message),
        file_(file),
        row_(row),
        column_(column) {}
  const std::string& file() const noexcept { return file_; }
  long row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  std::string file_;
  long row_;
  std::string column_;
};

}  // namespace gridshift

#endif  // GRIDSHIFT_COMMON_HPP
