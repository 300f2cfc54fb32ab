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

#include <random>

#include "cases.hpp"
#include "gridshift/strategies.hpp"

using namespace gridshift;

namespace {

const FlexLoadSpec kSpec{"A"};

SignalVector sig(SignalId id, const HourlyVector& v, std::string scope = "A") {
  return SignalVector{id, v, std::move(scope)};
}

void check_916(const NodeSchedule& n) {
  int up = 0, down = 0, flat = 0;
  for (int mw : n.mw) {
    up += mw == 480;
    down += mw == 320;
    flat += mw == 400;
  }
  CHECK(up == 9);
  CHECK(down == 9);
  CHECK(flat == 6);
}

}  // namespace

TEST_CASE("constant signal follows the hour tie rule") {
  const LoadShape s = shape_from_signal(sig(SignalId::lmp, HourlyVector::Constant(7)), kSpec);
  for (int h = 0; h < kHoursPerDay; ++h) CHECK(s[0].mw[h] == (h < 9 ? 480 : (h < 15 ? 400 : 320)));
}

TEST_CASE("monotone signal and orientation flip") {
  HourlyVector inc;
  for (int h = 0; h < kHoursPerDay; ++h) inc[h] = h;
  const LoadShape low = shape_from_values(inc, Orientation::load_where_low, kSpec);
  const LoadShape high = shape_from_values(inc, Orientation::load_where_high, kSpec);
  for (int h = 0; h < kHoursPerDay; ++h) {
    CHECK(low[0].mw[h] == (h < 9 ? 480 : (h < 15 ? 400 : 320)));
    CHECK(high[0].mw[h] - 400 == -(low[0].mw[h] - 400));
  }
  // Rank invariance under a strictly monotone transform.
  const HourlyVector cube = inc.array().cube() - 5.0;
  CHECK(shape_from_values(cube, Orientation::load_where_low, kSpec) == low);
}

TEST_CASE("congested two-bus lmp puts 480 in the zero-price hours") {
  const GridCase grid = testing::congested_two_bus();
  DayScenario s = testing::flat_day(grid, {30, 100});
  for (int h = 9; h < kHoursPerDay; ++h) s.availability(0, h) = 0.1;  // 20 MW, below A's load
  const DispatchResult r = solve_day_with_demand(grid, s, HourlyTable::Zero(2, kHoursPerDay));
  const SignalVector lmp = lmp_signal(grid, r, "A");
  const LoadShape shape = shape_from_signal(lmp, kSpec);
  for (int h = 0; h < 9; ++h) {
    CHECK(lmp.values[h] == doctest::Approx(0.0));
    CHECK(shape[0].mw[h] == 480);
  }
}

TEST_CASE("overnight shape") {
  const LoadShape s = overnight_shape(kSpec);
  CHECK(s[0].mw[13] == 320);
  CHECK(s[0].mw[2] == 480);
  CHECK(s[0].mw[21] == 400);
  CHECK(total_shape_energy(s) == 9600);
  check_916(s[0]);
}

TEST_CASE("random signals keep the 9/9/6 structure") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-50, 50);
  std::uniform_int_distribution<int> coarse(0, 3);
  const std::array<FlexLoadSpec, 2> two{FlexLoadSpec{"A"}, FlexLoadSpec{"B"}};
  for (int i = 0; i < 10000; ++i) {
    HourlyVector v, w;
    for (int h = 0; h < kHoursPerDay; ++h) {
      // Mix continuous and heavily tied signals.
      v[h] = i % 2 ? u(rng) : coarse(rng);
      w[h] = i % 3 ? u(rng) : coarse(rng);
    }
    const SignalId id = kAllSignals[static_cast<std::size_t>(i) % kAllSignals.size()];
    const LoadShape s = shape_from_signal(sig(id, v), kSpec);
    REQUIRE(total_shape_energy(s) == 9600);
    check_916(s[0]);
    const LoadShape t = two_node_shape(sig(id, v), sig(id, w, "B"), two);
    REQUIRE(total_shape_energy(t) == 19200);
    int up = 0, down = 0;
    for (const auto& n : t.nodes()) {
      for (int mw : n.mw) {
        CHECK((mw == 320 || mw == 400 || mw == 480));
        up += mw == 480;
        down += mw == 320;
      }
    }
    CHECK(up == 18);
    CHECK(down == 18);
  }
}

TEST_CASE("two-node shaping") {
  const std::array<FlexLoadSpec, 2> two{FlexLoadSpec{"A"}, FlexLoadSpec{"B"}};
  SUBCASE("identical signals reduce to independent shaping") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> d(0, 40);
    for (int i = 0; i < 500; ++i) {
      HourlyVector v;
      for (int h = 0; h < kHoursPerDay; ++h) v[h] = d(rng);
      const LoadShape joint = two_node_shape(sig(SignalId::lmp, v), sig(SignalId::lmp, v, "B"), two);
      const LoadShape a = shape_from_values(v, Orientation::load_where_low, two[0]);
      const LoadShape b = shape_from_values(v, Orientation::load_where_low, two[1]);
      CHECK(joint[0].mw == a[0].mw);
      CHECK(joint[1].mw == b[0].mw);
    }
  }
  SUBCASE("node A uniformly cheaper") {
    HourlyVector a, b;
    for (int h = 0; h < kHoursPerDay; ++h) {
      a[h] = h;
      b[h] = 100 + h;
    }
    const LoadShape s = two_node_shape(sig(SignalId::lmp, a), sig(SignalId::lmp, b, "B"), two);
    for (int h = 0; h < kHoursPerDay; ++h) {
      CHECK(s[0].mw[h] == (h < 18 ? 480 : 400));
      CHECK(s[1].mw[h] == (h < 6 ? 400 : 320));
    }
  }
  SUBCASE("mixed signal ids") {
    CHECK_THROWS_AS(two_node_shape(sig(SignalId::lmp, HourlyVector::Zero()),
                                   sig(SignalId::ws, HourlyVector::Zero(), "B"), two),
                    ConfigError);
  }
}

TEST_CASE("plan_day dispatch") {
  const GridCase grid = testing::one_bus_gas();
  const std::array<FlexLoadSpec, 1> one{kSpec};
  SignalSet set;
  HourlyVector v;
  for (int h = 0; h < kHoursPerDay; ++h) v[h] = (h * 7) % 24;
  set.add(sig(SignalId::lmp, v));
  set.add(sig(SignalId::zws, v, "Z"));

  CHECK(plan_day(StrategyId::base, set, grid, one).shape == LoadShape::flat(one));
  CHECK(plan_day(StrategyId::lmp, set, grid, one).shape == shape_from_signal(sig(SignalId::lmp, v), kSpec));
  CHECK(plan_day(StrategyId::zws, set, grid, one).shape ==
        shape_from_values(v, Orientation::load_where_high, kSpec));
  CHECK(plan_day(StrategyId::overnight, set, grid, one).shape == overnight_shape(kSpec));
  try {
    plan_day(StrategyId::wme, set, grid, one);
    FAIL("expected a missing-signal error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("wme") != std::string::npos);
  }
  CHECK_THROWS_AS(plan_day(StrategyId::opt, set, grid, one), ConfigError);
  const LoadShape marker = overnight_shape(kSpec);
  CHECK(plan_day(StrategyId::opt, set, grid, one, [&](auto) { return marker; }).shape == marker);
}
