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
#include "gridshift/grid_model.hpp"

using namespace gridshift;

TEST_CASE("carbon table defaults") {
  const auto t = CarbonTable::defaults();
  CHECK(t[Technology::wind] == 11);
  CHECK(t[Technology::solar] == 45);
  CHECK(t[Technology::nuclear] == 12);
  CHECK(t[Technology::coal] == 820);
  CHECK(t[Technology::gas_cc] == 490);
  CHECK(t[Technology::gas_ct] == 490);
  CHECK(t[Technology::gas_st] == 490);
  CHECK(t[Technology::gas_ic] == 490);
  CHECK(t[Technology::biomass] == 230);
  CHECK(t[Technology::hydro] == 24);
  CarbonTable c;
  CHECK_THROWS_AS(c.set(Technology::coal, -1), ConfigError);
  int intermittent = 0;
  for (auto tech : kAllTechnologies) intermittent += is_intermittent(tech);
  CHECK(intermittent == 2);
  for (auto tech : kAllTechnologies) CHECK(technology_from_string(to_string(tech)) == tech);
}

TEST_CASE("validate_case") {
  auto c = testing::congested_two_bus();
  CHECK(validate_case(c).empty());
  CHECK(validate_case(c).empty());

  auto missing = c;
  missing.lines[0].to_bus = "Q";
  auto v = validate_case(missing);
  REQUIRE(v.size() == 2);  // unknown endpoint, and B is then disconnected
  CHECK(v[0].entity == "line AB");

  auto negative = c;
  negative.lines[0].susceptance = -1;
  v = validate_case(negative);
  REQUIRE(v.size() == 1);
  CHECK(v[0].entity == "line AB");

  auto bad_gen = c;
  bad_gen.generators[0].p_min = 300;
  CHECK(validate_case(bad_gen).size() == 1);
  bad_gen = c;
  bad_gen.slack_bus = "nope";
  CHECK(validate_case(bad_gen).size() == 1);
}

TEST_CASE("shape energy") {
  FlexLoadSpec spec{"A"};
  const std::vector<FlexLoadSpec> one{spec};
  CHECK(total_shape_energy(LoadShape::flat(one)) == 9600);

  NodeSchedule s{"A", {}};
  for (int h = 0; h < 24; ++h) s.mw[h] = h < 9 ? 480 : (h < 18 ? 320 : 400);
  CHECK(total_shape_energy(LoadShape::make(one, {s})) == 9600);

  const std::vector<FlexLoadSpec> two{spec, FlexLoadSpec{"B"}};
  CHECK(total_shape_energy(LoadShape::flat(two)) == 19200);

  std::vector<int> short_day(23, 400);
  CHECK_THROWS_AS(total_schedule_energy(short_day), StructuralError);

  auto bad = s;
  bad.mw[0] = 420;
  CHECK_THROWS_AS(LoadShape::make(one, {bad}), StructuralError);
  bad = s;
  bad.mw[20] = 480;  // ten up hours
  CHECK_THROWS_AS(LoadShape::make(one, {bad}), StructuralError);

  FlexLoadSpec odd{"A"};
  odd.hours_up = 8;
  CHECK_THROWS_AS(odd.check(), StructuralError);
  FlexLoadSpec thin{"A", 50, 50};
  CHECK_THROWS_AS(thin.check(), StructuralError);
}
