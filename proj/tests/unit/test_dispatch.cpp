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

#include "cases.hpp"
#include "gridshift/dispatch.hpp"

using namespace gridshift;
using testing::unit;

namespace {

const std::vector<FlexLoadSpec> kFlexA{FlexLoadSpec{"A"}};

void check_balance(const GridCase& grid, const DispatchResult& r) {
  for (int h = 0; h < kHoursPerDay; ++h) {
    CHECK(std::abs(r.generation.col(h).sum() - r.bus_demand.col(h).sum()) < 1e-7);
    for (std::size_t l = 0; l < grid.lines.size(); ++l) {
      CHECK(std::abs(r.flow(l, h)) <= grid.lines[l].flow_limit + 1e-7);
    }
  }
}

/// One bus with wind available in 15 hours and coal marginal in the other 9.
GridCase coal_wind_bus() {
  GridCase c;
  c.buses = {{"A", "Z"}};
  c.generators = {unit("wind", "A", Technology::wind, 1000, -1),
                  unit("coal", "A", Technology::coal, 2000, 15)};
  c.slack_bus = "A";
  return c;
}

DayScenario coal_wind_day(const GridCase& c) {
  auto day = testing::flat_day(c, {200});
  for (int h = 0; h < 24; ++h) day.availability(0, h) = (h % 8 < 3) ? 0.0 : 1.0;  // 9 windless hours
  return day;
}

}  // namespace

TEST_CASE("dispatch: single bus, single marginal unit") {
  const auto c = testing::one_bus_gas();
  const auto day = testing::flat_day(c, {100});
  const auto r = solve_day(c, day, LoadShape::flat(kFlexA));
  for (int h = 0; h < 24; ++h) {
    CHECK(r.generation(0, h) == doctest::Approx(500));
    CHECK(r.lmp(0, h) == doctest::Approx(30));
  }
  CHECK(r.emissions == doctest::Approx(5880));
  CHECK(r.cost == doctest::Approx(500 * 24 * 30));
  CHECK(r.load_payment == doctest::Approx(500 * 24 * 30));
  check_balance(c, r);
  CHECK(marginal_generator(c, r, 0, 5) == 0);
}

TEST_CASE("dispatch: congested two-bus day") {
  const auto c = testing::congested_two_bus();
  const auto day = testing::flat_day(c, {0, 120});
  const auto r = solve_day_with_demand(c, day, HourlyTable::Zero(2, 24));
  for (int h = 0; h < 24; ++h) {
    CHECK(r.generation(0, h) == doctest::Approx(50));
    CHECK(r.generation(1, h) == doctest::Approx(70));
    CHECK(r.flow(0, h) == doctest::Approx(50));
    CHECK(r.lmp(0, h) == doctest::Approx(0).epsilon(1e-9));
    CHECK(r.lmp(1, h) == doctest::Approx(30));
    CHECK(r.curtailment(0, h) == doctest::Approx(150));
  }
  check_balance(c, r);
  CHECK(marginal_generator(c, r, 0, 3) == 0);
  CHECK(marginal_generator(c, r, 1, 3) == 1);

  CHECK(marginal_emissions(c, day, "A", 4, r) == doctest::Approx(11));
  CHECK(marginal_emissions(c, day, "B", 4, r) == doctest::Approx(490));
  // Local linearity.
  CHECK(marginal_emissions(c, day, "B", 4, r, 2.0) == doctest::Approx(490));
}

TEST_CASE("dispatch: three-bus loop flow") {
  GridCase c;
  c.buses = {{"1", "Z"}, {"2", "Z"}, {"3", "Z"}};
  c.lines = {{"12", "1", "2", 10, 1000}, {"23", "2", "3", 10, 1000}, {"13", "1", "3", 10, 1000}};
  c.generators = {unit("g", "1", Technology::gas_cc, 500, 20)};
  c.slack_bus = "1";
  const auto day = testing::flat_day(c, {0, 0, 90});
  const auto r = solve_day_with_demand(c, day, HourlyTable::Zero(3, 24));
  // Direct path has half the reactance of the two-line path: 2/3 vs 1/3.
  CHECK(r.flow(2, 0) == doctest::Approx(60));
  CHECK(r.flow(0, 0) == doctest::Approx(30));
  CHECK(r.flow(1, 0) == doctest::Approx(30));
  for (int b = 0; b < 3; ++b) CHECK(r.lmp(b, 0) == doctest::Approx(20));
}

TEST_CASE("dispatch: coal marginal emissions and infeasibility") {
  GridCase c;
  c.buses = {{"A", "Z"}};
  c.generators = {unit("coal", "A", Technology::coal, 1000, 15)};
  c.slack_bus = "A";
  auto day = testing::flat_day(c, {500});
  const auto r = solve_day_with_demand(c, day, HourlyTable::Zero(1, 24));
  CHECK(marginal_emissions(c, day, "A", 0, r) == doctest::Approx(820));

  day.bus_demand(0, 7) = 1200;
  try {
    solve_day_with_demand(c, day, HourlyTable::Zero(1, 24));
    FAIL("expected infeasibility");
  } catch (const InfeasibleError& e) {
    CHECK(e.hour() == 7);
  }
  day.bus_demand(0, 7) = 1000;
  const auto full = solve_day_with_demand(c, day, HourlyTable::Zero(1, 24));
  CHECK_THROWS_AS(marginal_emissions(c, day, "A", 7, full), InfeasibleError);
}

TEST_CASE("dispatch: energy budgets couple hours") {
  GridCase c;
  c.buses = {{"A", "Z"}};
  c.generators = {unit("hydro", "A", Technology::hydro, 300, 5), unit("gas", "A", Technology::gas_cc, 1000, 30)};
  c.generators[0].daily_energy_budget = 1000.0;
  c.slack_bus = "A";
  const auto day = testing::flat_day(c, {400});
  const auto r = solve_day_with_demand(c, day, HourlyTable::Zero(1, 24));
  CHECK(r.generation.row(0).sum() == doctest::Approx(1000));
  check_balance(c, r);
}

TEST_CASE("dispatch: raising a bid never lowers cost") {
  auto c = testing::congested_two_bus();
  const auto day = testing::flat_day(c, {30, 120});
  const double before = solve_day_with_demand(c, day, HourlyTable::Zero(2, 24)).cost;
  c.generators[0].bid_price = 10;
  CHECK(solve_day_with_demand(c, day, HourlyTable::Zero(2, 24)).cost >= before - 1e-9);
}

TEST_CASE("dispatch: uncongested hours share one price") {
  auto c = testing::congested_two_bus();
  c.lines[0].flow_limit = 1000;
  const auto day = testing::flat_day(c, {0, 120});
  const auto r = solve_day_with_demand(c, day, HourlyTable::Zero(2, 24));
  CHECK(r.lmp(0, 0) == doctest::Approx(r.lmp(1, 0)));
}

TEST_CASE("benchmark: rounding") {
  HourlyTable cont(1, 24);
  for (int h = 0; h < 24; ++h) cont(0, h) = 400 + (h < 12 ? 10.0 * h : -10.0 * (h - 11));
  const auto s = round_schedule(cont, kFlexA);
  CHECK(s[0].mw[11] == 480);
  CHECK(s[0].mw[3] == 480);
  CHECK(s[0].mw[2] == 400);
  CHECK(s[0].mw[23] == 320);
  CHECK(s[0].mw[15] == 320);
  CHECK(s[0].mw[14] == 400);
  HourlyTable flat = HourlyTable::Constant(1, 24, 400);
  const auto t = round_schedule(flat, kFlexA);
  for (int h = 0; h < 24; ++h) CHECK(t[0].mw[h] == (h < 9 ? 480 : (h < 15 ? 400 : 320)));
}

TEST_CASE("benchmark: coal/wind day") {
  const auto c = coal_wind_bus();
  const auto day = coal_wind_day(c);
  BenchmarkConfig cfg;
  cfg.flex = kFlexA;
  const auto b = co_optimize_benchmark(c, day, cfg);
  const auto base = solve_day(c, day, LoadShape::flat(kFlexA));
  CHECK(base.emissions - b.dispatch.emissions == doctest::Approx(720 * (820 - 11) / 1000.0));
  for (int h = 0; h < 24; ++h) {
    if (day.availability(0, h) == 0.0) CHECK(b.shape[0].mw[h] == 320);
  }
  CHECK(b.best_exact_emissions <= b.best_sweep_emissions + 1e-9);

  // Zero penalty: pure cost co-optimisation is never dearer than flat.
  const auto cont = co_optimize_continuous(c, day, kFlexA, 0.0);
  CHECK(cont.sum() == doctest::Approx(9600));
  BenchmarkConfig zero = cfg;
  zero.co2_penalty_sweep = {0};
  zero.exact_search = false;
  const auto z = co_optimize_benchmark(c, day, zero);
  CHECK(z.dispatch.cost <= base.cost + 1e-6);
}
