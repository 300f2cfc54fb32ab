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

#include <filesystem>

#include "gridshift/scenario_io.hpp"
#include "gridshift/synthetic.hpp"

using namespace gridshift;

namespace {

SynthConfig short_year(int days = 12) {
  SynthConfig c;
  c.days = days;
  return c;
}

const ScenarioBundle& full_year() {
  static const ScenarioBundle b = generate_synthetic_year(SynthConfig{});
  return b;
}

/// Drops the line holding the given hour of the first series.
std::string drop_hour(const std::string& csv, int hour) {
  std::size_t pos = csv.find('\n') + 1;
  for (int h = 0; h < hour; ++h) pos = csv.find('\n', pos) + 1;
  const std::size_t end = csv.find('\n', pos) + 1;
  return csv.substr(0, pos) + csv.substr(end);
}

}  // namespace

TEST_CASE("scenario_io: bundle round trip") {
  const ScenarioBundle b = generate_synthetic_year(short_year());
  const auto dir = std::filesystem::temp_directory_path() / "gridshift_roundtrip";
  std::filesystem::remove_all(dir);
  write_bundle(b, dir.string());
  const ScenarioBundle back = load_bundle(dir.string());
  CHECK(back == b);
  CHECK(back.days.size() == 12);
  CHECK(back.labels == b.labels);
  CHECK(back.cfeg_units == b.cfeg_units);
  std::filesystem::remove_all(dir);
}

TEST_CASE("scenario_io: grid case json round trip") {
  const ScenarioBundle b = generate_synthetic_year(short_year(1));
  const GridCase back = parse_grid_case(grid_case_json(b.grid));
  CHECK(grid_case_json(back) == grid_case_json(b.grid));
  CHECK_THROWS_AS(parse_grid_case("{\"buses\": 3}"), ConfigError);
}

TEST_CASE("scenario_io: demand with 23 hours fails at the missing hour") {
  const ScenarioBundle b = generate_synthetic_year(short_year(2));
  const std::string text = drop_hour(demand_csv(b), 23);
  auto days = b.days;
  try {
    parse_demand_csv(text, "demand.csv", b.grid, days);
    FAIL("expected a format error");
  } catch (const FormatError& e) {
    CHECK(e.file() == "demand.csv");
    CHECK(e.column() == "hour");
    CHECK(e.row() == 24);  // data row of hour 23 of the first series
    CHECK(std::string(e.what()).find("missing hour 23") != std::string::npos);
  }
  // A gap in the middle is reported where the next hour shows up.
  try {
    parse_demand_csv(drop_hour(demand_csv(b), 5), "demand.csv", b.grid, days);
    FAIL("expected a format error");
  } catch (const FormatError& e) {
    CHECK(e.row() == 6);
    CHECK(e.column() == "hour");
  }
}

TEST_CASE("scenario_io: availability outside [0, 1] is a range error") {
  const ScenarioBundle b = generate_synthetic_year(short_year(2));
  std::string text = availability_csv(b);
  const std::size_t line = text.find('\n') + 1;
  const std::size_t comma = text.rfind(',', text.find('\n', line));
  text = text.substr(0, comma + 1) + "1.2" + text.substr(text.find('\n', line));
  auto days = b.days;
  try {
    parse_availability_csv(text, "availability.csv", b.grid, days);
    FAIL("expected a format error");
  } catch (const FormatError& e) {
    CHECK(e.row() == 1);
    CHECK(e.column() == "value");
  }
}

TEST_CASE("scenario_io: malformed rows") {
  const ScenarioBundle b = generate_synthetic_year(short_year(1));
  auto days = b.days;
  CHECK_THROWS_AS(parse_demand_csv("date,hour,entity\n", "d.csv", b.grid, days), FormatError);
  CHECK_THROWS_AS(parse_demand_csv("date,hour,entity,value\n2023-01-01,0,NOPE,1\n", "d.csv", b.grid, days), FormatError);
  CHECK_THROWS_AS(parse_demand_csv("date,hour,entity,value\n2023-01-01,0,TESLA,abc\n", "d.csv", b.grid, days),
                  FormatError);
  CHECK_THROWS_AS(parse_labels_csv("date,season,strategy\n2023-01-01,spring,lmp\n", "l.csv"), FormatError);
}

TEST_CASE("synthetic: seed determinism") {
  const ScenarioBundle a = generate_synthetic_year(short_year(20));
  const ScenarioBundle b = generate_synthetic_year(short_year(20));
  CHECK(a == b);
  CHECK(demand_csv(a) == demand_csv(b));
  CHECK(availability_csv(a) == availability_csv(b));
  SynthConfig other = short_year(20);
  other.seed = 2;
  CHECK(demand_csv(generate_synthetic_year(other)) != demand_csv(a));
  SynthConfig bad;
  bad.tie_limit = 0;
  CHECK_THROWS_AS(generate_synthetic_year(bad), ConfigError);
}

TEST_CASE("synthetic: summer to winter demand ratio") {
  const ScenarioBundle& b = full_year();
  double summer = 0, winter = 0;
  int ns = 0, nw = 0;
  for (std::size_t d = 0; d < b.days.size(); ++d) {
    const double total = b.days[d].bus_demand.sum();
    if (b.labels[d].season == Regime::high_gnd) {
      summer += total;
      ++ns;
    } else {
      winter += total;
      ++nw;
    }
  }
  REQUIRE(ns > 0);
  REQUIRE(nw > 0);
  const double ratio = (summer / ns) / (winter / nw);
  CHECK(std::abs(ratio / 2.0 - 1.0) < 0.05);
}

TEST_CASE("synthetic: curtailment on at least 10% of days") {
  const ScenarioBundle& b = full_year();
  int curtailed = 0;
  for (const auto& day : b.days) {
    const auto r = solve_day(b.grid, day, LoadShape::flat(std::span(b.flex).first(1)));
    double wind = 0;
    for (std::size_t g = 0; g < b.grid.generators.size(); ++g) {
      if (b.grid.generators[g].technology == Technology::wind) wind += r.curtailment.row(g).sum();
    }
    curtailed += wind > 1e-6;
  }
  CHECK(curtailed >= static_cast<int>(0.1 * b.days.size()));
  MESSAGE("days with wind curtailment: " << curtailed);
}

TEST_CASE("synthetic: constructed labels") {
  CHECK(constructed_label(true, 5.0, 17.3) == StrategyId::lmp);
  CHECK(constructed_label(true, 17.3, 17.3) == StrategyId::lmp);
  CHECK(constructed_label(true, 18.0, 17.3) == StrategyId::wme);
  CHECK(constructed_label(false, -1.0, 0.0) == StrategyId::ws);
  CHECK(constructed_label(false, 1.2, 0.0) == StrategyId::zws);
  int high = 0;
  for (const auto& l : full_year().labels) high += l.strategy == StrategyId::lmp || l.strategy == StrategyId::wme;
  CHECK(std::abs(high - 182) <= 1);
}
