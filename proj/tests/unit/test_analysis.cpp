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
#include "gridshift/analysis.hpp"
#include "gridshift/strategies.hpp"

using namespace gridshift;
using testing::unit;

namespace {

const std::vector<FlexLoadSpec> kFlexA{FlexLoadSpec{"A"}};

DispatchResult run(const GridCase& c, const DayScenario& d, const LoadShape& s) { return solve_day(c, d, s); }

/// Coal covers the first 800 MW; a peaker covers hours 12-20 where other load is 700.
GridCase coal_peaker() {
  GridCase c;
  c.buses = {{"A", "Z"}};
  c.generators = {unit("coal", "A", Technology::coal, 800, 15), unit("ct", "A", Technology::gas_ct, 600, 60)};
  c.slack_bus = "A";
  return c;
}

DayScenario peak_day(const GridCase& c) {
  DayScenario d = testing::flat_day(c, {300});
  for (int h = 12; h <= 20; ++h) d.bus_demand(0, h) = 700;
  return d;
}

}  // namespace

TEST_CASE("impact identity and date check") {
  const GridCase c = testing::one_bus_gas();
  const DispatchResult r = run(c, testing::flat_day(c, {50}), LoadShape::flat(kFlexA));
  const ImpactRecord i = impact(r, r);
  CHECK(i.co2_saved == 0.0);
  CHECK(i.cost_saved == 0.0);
  CHECK(i.avg_price_change == 0.0);
  DispatchResult other = r;
  other.date = "2023-01-02";
  CHECK_THROWS_AS(impact(r, other), ConfigError);
}

TEST_CASE("impact: shaping from coal into curtailed wind") {
  GridCase c;
  c.buses = {{"A", "Z"}};
  c.generators = {unit("wind", "A", Technology::wind, 480, 0), unit("coal", "A", Technology::coal, 1000, 15)};
  c.slack_bus = "A";
  DayScenario d = testing::flat_day(c, {0});
  for (int h = 0; h < kHoursPerDay; ++h) d.availability(0, h) = h < 9 ? 1.0 : 0.0;
  HourlyVector lmp_order;
  for (int h = 0; h < kHoursPerDay; ++h) lmp_order[h] = h;
  const LoadShape shaped = shape_from_values(lmp_order, Orientation::load_where_low, kFlexA[0]);
  const ImpactRecord i = impact(run(c, d, LoadShape::flat(kFlexA)), run(c, d, shaped));
  CHECK(i.co2_saved == doctest::Approx(720.0 * (820 - 11) / 1000.0));
  CHECK(i.co2_saved == doctest::Approx(582.48));
}

TEST_CASE("yearly summary") {
  std::vector<ImpactRecord> zeros(365);
  for (std::size_t d = 0; d < zeros.size(); ++d) {
    zeros[d].date = std::to_string(1000 + d);
    zeros[d].strategy = "base";
  }
  auto s = yearly_summary(zeros);
  REQUIRE(s.size() == 1);
  CHECK(s[0].days == 365);
  CHECK(s[0].co2_saved == 0.0);
  CHECK(s[0].avg_price_change == 0.0);

  std::vector<ImpactRecord> two(2);
  two[0] = {"2023-01-01", "lmp", 1000.0, 5, 5, 1.0, 100};
  two[1] = {"2023-01-02", "lmp", -1000.0, 0, 0, 3.0, 300};
  s = yearly_summary(two);
  CHECK(s[0].co2_saved_kt() == 0.0);
  CHECK(s[0].avg_price_change == doctest::Approx(2.5));
  std::swap(two[0], two[1]);
  CHECK(yearly_summary(two)[0].avg_price_change == s[0].avg_price_change);

  two[0].min_lmp = {1.5, -2};
  two[1].regime = Regime::high_gnd;
  CHECK(parse_impact_csv(impact_csv(two), "x.csv") == two);
}

TEST_CASE("peak hour deltas") {
  const GridCase c = coal_peaker();
  const DayScenario d = peak_day(c);
  const std::vector<DispatchResult> base{run(c, d, LoadShape::flat(kFlexA))};
  const std::vector<DispatchResult> night{run(c, d, overnight_shape(kFlexA[0]))};

  const PeakDelta same = peak_hours_delta(c, base, base, 9);
  for (double v : same.mw) CHECK(v == 0.0);
  const PeakDelta p = peak_hours_delta(c, base, night, 9);
  CHECK(p.hours == 9);
  CHECK_FALSE(p.truncated);
  CHECK(p.mw[static_cast<std::size_t>(Technology::gas_ct)] == doctest::Approx(80.0));
  CHECK(p.mw[static_cast<std::size_t>(Technology::coal)] == doctest::Approx(0.0));
  const PeakDelta all = peak_hours_delta(c, base, night);
  CHECK(all.truncated);
  CHECK(all.hours == 24);

  CHECK(peak_gnd_reduction(base, base) == 0.0);
  CHECK(peak_gnd_reduction(base, night) == doctest::Approx(80.0));
  HourlyVector reversed;
  for (int h = 0; h < kHoursPerDay; ++h) reversed[h] = -d.bus_demand(0, h);
  const std::vector<DispatchResult> worse{
      run(c, d, shape_from_values(reversed, Orientation::load_where_low, kFlexA[0]))};
  CHECK(peak_gnd_reduction(base, worse) == doctest::Approx(-80.0));
}

TEST_CASE("demand increase attribution") {
  SUBCASE("single generator") {
    const GridCase c = testing::one_bus_gas();
    DayScenario d = testing::flat_day(c, {50});
    for (int h = 12; h <= 20; ++h) d.bus_demand(0, h) = 100;
    const auto rows = attribute_demand_increases(c, {run(c, d, LoadShape::flat(kFlexA))}, {30.0}, {Regime::low_gnd});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].hour == 12);
    CHECK(rows[0].share[static_cast<std::size_t>(Technology::gas_cc)] == 1.0);
    CHECK(rows[0].bin == min_lmp_bin(30.0));
  }
  SUBCASE("wind headroom then gas") {
    GridCase c;
    c.buses = {{"A", "Z"}};
    c.generators = {unit("wind", "A", Technology::wind, 500, 0), unit("gas", "A", Technology::gas_cc, 1000, 30),
                    unit("coal", "A", Technology::coal, 1000, 40)};
    c.slack_bus = "A";
    DayScenario d = testing::flat_day(c, {0});
    d.availability.row(0).setConstant(0.96);  // 480 MW
    for (int h = 0; h < kHoursPerDay; ++h) d.bus_demand(0, h) = h < 3 ? 50 + 30 * h : (h == 3 ? 600 : 400);
    // Hour 3 splits between wind and gas.
    const auto r = solve_day_with_demand(c, d, HourlyTable::Zero(1, kHoursPerDay));
    const auto rows = attribute_demand_increases(c, {r}, {0.0}, {Regime::high_gnd});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].share[0] == 1.0);
    CHECK(rows[1].share[0] == 1.0);
    CHECK(rows[2].demand_increase == doctest::Approx(490.0));
    CHECK(rows[2].share[0] == doctest::Approx(370.0 / 490.0));
    CHECK(rows[2].share[static_cast<std::size_t>(Technology::gas_cc)] == doctest::Approx(120.0 / 490.0));
    CHECK(rows[2].coal_share() == 0.0);
    CHECK(rows[2].non_coal_share() == doctest::Approx(1.0));
    const auto bins = summarize_attribution(rows);
    CHECK(bins.size() == 3 * kMinLmpBins);
  }
}

TEST_CASE("marginal technology by min(LMP) bin") {
  const GridCase c = testing::one_bus_gas();
  const DayScenario d = testing::flat_day(c, {50});
  const auto r = run(c, d, LoadShape::flat(kFlexA));
  const MarginalTable t = marginal_tech_by_minlmp(c, {r, r}, "A", {-3.0, 12.0});
  CHECK(t.counts[0][static_cast<std::size_t>(Technology::gas_cc)] == 24);
  CHECK(t.counts[3][static_cast<std::size_t>(Technology::gas_cc)] == 24);
  CHECK(t.hours[1] == 0);
  CHECK(t.renewable_share(0, 5) == 0.0);
  CHECK(min_lmp_bin(-0.1) == 0);
  CHECK(min_lmp_bin(4.99) == 1);
  CHECK(min_lmp_bin(10) == 3);
  CHECK(min_lmp_bin(25) == 5);
}
