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

#include "doctest.h"

#include <sstream>

#include "cases.hpp"
#include "gridshift/signals.hpp"

using namespace gridshift;
using testing::unit;

namespace {

GridCase coal_gas_bus() {
  GridCase c;
  c.buses = {{"A", "Z"}};
  c.generators = {unit("coal", "A", Technology::coal, 100, 15, 100), unit("gas", "A", Technology::gas_cc, 100, 30, 100)};
  c.slack_bus = "A";
  return c;
}

std::string signal_csv(int hours) {
  std::ostringstream out;
  out << "date,hour,name,scope,value\n";
  for (int h = 0; h < hours; ++h) out << "2023-01-01," << h << ",wme,A," << 400 + h << "\n";
  return out.str();
}

}  // namespace

TEST_CASE("orientation table") {
  for (SignalId id : kAllSignals) {
    const bool high = id == SignalId::ws || id == SignalId::zws || id == SignalId::cfeg;
    CHECK((orientation(id) == Orientation::load_where_high) == high);
    CHECK(signal_from_string(to_string(id)) == id);
  }
  CHECK_THROWS_AS(signal_from_string("nope"), ConfigError);
}

TEST_CASE("average carbon intensity") {
  const GridCase grid = coal_gas_bus();
  const DispatchResult r = solve_day_with_demand(grid, testing::flat_day(grid, {200}),
                                                 HourlyTable::Zero(1, kHoursPerDay));
  const SignalVector ci = avg_carbon_intensity(grid, r);
  for (int h = 0; h < kHoursPerDay; ++h) CHECK(ci.values[h] == doctest::Approx(655.0));
  // Generation-weighted CI reproduces total emissions.
  double t = 0;
  for (int h = 0; h < kHoursPerDay; ++h) t += ci.values[h] * r.generation.col(h).sum() / 1000.0;
  CHECK(t == doctest::Approx(r.emissions).epsilon(1e-12));

  GridCase wind;
  wind.buses = {{"A", "Z"}};
  wind.generators = {unit("w", "A", Technology::wind, 300, 0)};
  wind.slack_bus = "A";
  const DispatchResult rw = solve_day_with_demand(wind, testing::flat_day(wind, {100}),
                                                  HourlyTable::Zero(1, kHoursPerDay));
  CHECK(avg_carbon_intensity(wind, rw).values[5] == doctest::Approx(11.0));

  const DispatchResult zero = solve_day_with_demand(wind, testing::flat_day(wind, {0}),
                                                    HourlyTable::Zero(1, kHoursPerDay));
  CHECK_THROWS_AS(avg_carbon_intensity(wind, zero), StructuralError);
}

TEST_CASE("grid net demand and zonal renewables") {
  GridCase c;
  c.buses = {{"A", "N"}, {"B", "E"}};
  c.lines = {{"AB", "A", "B", 10, 1000}};
  c.generators = {unit("w", "A", Technology::wind, 60, 0), unit("s", "B", Technology::solar, 40, 0),
                  unit("g", "B", Technology::gas_cc, 500, 30)};
  c.slack_bus = "A";
  DayScenario s = testing::flat_day(c, {60, 40});
  s.availability.row(0).setConstant(0.5);
  s.availability.row(1).setConstant(0.5);
  CHECK(grid_net_demand(c, s).values[3] == doctest::Approx(50.0));
  CHECK(zonal_renewables(c, s).values[3] == doctest::Approx(50.0));
  CHECK(zonal_renewables(c, s, "N").values[3] == doctest::Approx(30.0));
  CHECK(zonal_renewables(c, s, "N").scope == "N");
  CHECK_THROWS_AS(zonal_renewables(c, s, "X"), ConfigError);

  // Redistribution across buses leaves GND unchanged.
  DayScenario moved = testing::flat_day(c, {100, 0});
  moved.availability = s.availability;
  CHECK(grid_net_demand(c, moved).values == grid_net_demand(c, s).values);

  s.availability.row(0).setZero();
  s.availability.row(1).setZero();
  CHECK(grid_net_demand(c, s).values[0] == doctest::Approx(100.0));
}

TEST_CASE("lme signal reuses marginal emissions") {
  const GridCase grid = testing::congested_two_bus();
  const DayScenario s = testing::flat_day(grid, {100, 100});
  const DispatchResult base = solve_day_with_demand(grid, s, HourlyTable::Zero(2, kHoursPerDay));
  const SignalVector a = lme_signal(grid, s, base, "A");
  const SignalVector b = lme_signal(grid, s, base, "B");
  CHECK(a.values[0] == doctest::Approx(11.0));
  CHECK(b.values[23] == doctest::Approx(490.0));
}

TEST_CASE("wme surrogate on a coal-marginal day") {
  GridCase c;
  c.buses = {{"A", "Z"}};
  c.generators = {unit("w", "A", Technology::wind, 50, 0), unit("coal", "A", Technology::coal, 500, 15)};
  c.slack_bus = "A";
  const DispatchResult r = solve_day_with_demand(c, testing::flat_day(c, {200}), HourlyTable::Zero(1, kHoursPerDay));
  const SignalVector w = wme_surrogate(c, r, "A");
  for (int h = 0; h < kHoursPerDay; ++h) CHECK(w.values[h] == doctest::Approx(820.0));
}

TEST_CASE("signal csv") {
  const SignalTable t = SignalTable::parse(signal_csv(24), "wme.csv");
  CHECK(t.get("2023-01-01", SignalId::wme, "A").values[23] == doctest::Approx(423.0));
  CHECK(SignalTable::parse(t.to_csv(), "again.csv") == t);

  try {
    SignalTable::parse(signal_csv(23), "short.csv");
    FAIL("expected a format error");
  } catch (const FormatError& e) {
    CHECK(e.file() == "short.csv");
    CHECK(e.row() == 24);
  }
  CHECK_THROWS_AS(SignalTable::parse("date,hour,name\n", "bad.csv"), FormatError);
  CHECK_THROWS_AS(t.get("2023-01-02", SignalId::wme, "A"), ConfigError);
}

TEST_CASE("day features lmp statistics") {
  const GridCase grid = testing::one_bus_gas();
  const DayScenario s = testing::flat_day(grid, {100});
  DispatchResult r = solve_day_with_demand(grid, s, HourlyTable::Zero(1, kHoursPerDay));
  r.lmp.setConstant(25.0);
  DayFeatures f = day_features(grid, s, r, {"A"});
  CHECK(f.min_lmp[0] == 25.0);
  CHECK(f.max_lmp[0] == 25.0);
  CHECK(f.median_lmp[0] == 25.0);

  for (int h = 0; h < kHoursPerDay; ++h) r.lmp(0, h) = 23 - h;
  f = day_features(grid, s, r, {"A"});
  CHECK(f.min_lmp[0] == 0.0);
  CHECK(f.max_lmp[0] == 23.0);
  CHECK(f.median_lmp[0] == 11.5);
  CHECK(f.mean_lmp[0] == 11.5);
  CHECK(f.total_demand == doctest::Approx(2400.0));
  CHECK(f.gnd_total == doctest::Approx(2400.0));
  CHECK(f.values().size() == f.names().size());
}
