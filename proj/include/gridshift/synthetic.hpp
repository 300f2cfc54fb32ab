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

#ifndef GRIDSHIFT_SYNTHETIC_HPP
#define GRIDSHIFT_SYNTHETIC_HPP

#include <cstdint>
#include <string>

#include "gridshift/scenario_io.hpp"

namespace gridshift {

/// Parameters of the two-zone synthetic year.  NORTH is renewables-rich and
/// hosts the TESLA flexible bus; EAST is coal- and gas-heavy and hosts
/// TYLERGND.
struct SynthConfig {
  std::uint64_t seed = 1;
  int days = 365;
  int start_year = 2023;
  double summer_winter_ratio = 2.0;
  double summer_renewable_derate = 0.9;
  double winter_demand = 2400.0;  // MW, system mean excluding flexible loads
  double north_share = 0.2;
  double north_wind_capacity = 3000.0;
  double east_wind_capacity = 3000.0;
  double solar_capacity = 1000.0;
  double tie_limit = 700.0;       // NCENT - ECENT
  double flex_tie_limit = 300.0;  // TESLA - TYLERGND
  double negative_bid_fraction = 0.5;
  double demand_noise = 0.03;

  /// Throws ConfigError on non-positive sizes or ratios.
  void check() const;
};

/// ISO date of the day index counted from 1 January of start_year.
std::string synthetic_date(int start_year, int day);

/// Deterministic for a given config.  Every day is solved once with flat
/// flexible loads at all flexible buses; an infeasible day throws.  Emits
/// surrogate wme (per flexible bus) and cfeg signals plus season and
/// constructed strategy labels.
ScenarioBundle generate_synthetic_year(const SynthConfig& config);

/// Constructed feature-study label.  At or below the regime's min(LMP)
/// threshold: lmp (high GND) or ws (low GND); above it: wme or zws.  The
/// generator uses the median min(LMP) of each regime as its threshold.
StrategyId constructed_label(bool high_gnd, double min_lmp, double threshold);

}  // namespace gridshift

#endif  // GRIDSHIFT_SYNTHETIC_HPP
