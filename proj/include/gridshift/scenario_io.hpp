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

#ifndef GRIDSHIFT_SCENARIO_IO_HPP
#define GRIDSHIFT_SCENARIO_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridshift/dispatch.hpp"
#include "gridshift/regimes.hpp"
#include "gridshift/signals.hpp"
#include "gridshift/strategies.hpp"

namespace gridshift {

inline constexpr int kBundleFormatVersion = 1;

/// Ground truth recorded by the generator.
struct DayLabel {
  std::string date;
  Regime season = Regime::low_gnd;  // high_gnd = summer
  StrategyId strategy = StrategyId::base;

  bool operator==(const DayLabel&) const = default;
};

struct ScenarioBundle {
  GridCase grid;
  /// Flexible loads, in the default order; runs pick one or two of them.
  std::vector<FlexLoadSpec> flex;
  std::vector<DayScenario> days;
  SignalTable signals;
  std::vector<DayLabel> labels;
  std::vector<std::string> cfeg_units;
  std::uint64_t seed = 0;

  const DayScenario& day(std::string_view date) const;
};

bool operator==(const ScenarioBundle& a, const ScenarioBundle& b);

std::string grid_case_json(const GridCase& grid);
/// Throws ConfigError on schema errors and on any validate_case violation.
GridCase parse_grid_case(std::string_view text);

/// Writes bundle.json, demand.csv, availability.csv and, when present,
/// signals.csv and labels.csv into the directory (created if missing).
void write_bundle(const ScenarioBundle& bundle, const std::string& dir);
/// Throws FormatError naming file, row and column for malformed data.
ScenarioBundle load_bundle(const std::string& dir);

std::string demand_csv(const ScenarioBundle& bundle);
std::string availability_csv(const ScenarioBundle& bundle);
std::string labels_csv(const std::vector<DayLabel>& labels);

/// Fills bus_demand from date,hour,entity,value rows.  Every listed day needs
/// 24 hours for every bus.
void parse_demand_csv(std::string_view text, const std::string& file, const GridCase& grid,
                      std::vector<DayScenario>& days);
/// Availability rows per generator; absent generators stay at 1.
void parse_availability_csv(std::string_view text, const std::string& file, const GridCase& grid,
                            std::vector<DayScenario>& days);
std::vector<DayLabel> parse_labels_csv(std::string_view text, const std::string& file);

}  // namespace gridshift

#endif  // GRIDSHIFT_SCENARIO_IO_HPP
