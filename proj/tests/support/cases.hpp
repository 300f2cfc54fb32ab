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

#ifndef GRIDSHIFT_TESTS_CASES_HPP
#define GRIDSHIFT_TESTS_CASES_HPP

#include <string>
#include <vector>

#include "gridshift/dispatch.hpp"
#include "gridshift/grid_model.hpp"

namespace gridshift::testing {

inline GeneratorSpec unit(std::string id, std::string bus, Technology tech, double p_max, double bid,
                          double p_min = 0.0) {
  GeneratorSpec g;
  g.id = std::move(id);
  g.bus = std::move(bus);
  g.technology = tech;
  g.p_min = p_min;
  g.p_max = p_max;
  g.bid_price = bid;
  return g;
}

inline DayScenario flat_day(const GridCase& grid, const std::vector<double>& bus_mw,
                            std::string date = "2023-01-01") {
  DayScenario s;
  s.date = std::move(date);
  s.bus_demand = HourlyTable::Zero(static_cast<Eigen::Index>(grid.buses.size()), kHoursPerDay);
  for (std::size_t b = 0; b < bus_mw.size(); ++b) s.bus_demand.row(b).setConstant(bus_mw[b]);
  s.availability = HourlyTable::Ones(static_cast<Eigen::Index>(grid.generators.size()), kHoursPerDay);
  return s;
}

/// One bus, one 500 MW gas unit bidding 30.
inline GridCase one_bus_gas() {
  GridCase c;
  c.buses = {{"A", "Z"}};
  c.generators = {unit("gas", "A", Technology::gas_cc, 500, 30)};
  c.slack_bus = "A";
  return c;
}

/// Wind (bid 0) at A, gas (bid 30) at B, joined by a 50 MW line.
inline GridCase congested_two_bus() {
  GridCase c;
  c.buses = {{"A", "Z1"}, {"B", "Z2"}};
  c.lines = {{"AB", "A", "B", 10.0, 50.0}};
  c.generators = {unit("wind", "A", Technology::wind, 200, 0), unit("gas", "B", Technology::gas_cc, 300, 30)};
  c.slack_bus = "A";
  return c;
}

}  // namespace gridshift::testing

#endif  // GRIDSHIFT_TESTS_CASES_HPP
