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

#include "gridshift/synthetic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace gridshift {

namespace {

constexpr double kPi = std::numbers::pi;

double round2(double v) { return std::round(v * 100.0) / 100.0; }

GeneratorSpec gen(std::string id, std::string bus, Technology t, double p_max, double bid) {
  GeneratorSpec g;
  g.id = std::move(id);
  g.bus = std::move(bus);
  g.technology = t;
  g.p_max = p_max;
  g.bid_price = bid;
  return g;
}

struct Case {
  GridCase grid;
  std::vector<int> north_wind, east_wind, solar;
  std::vector<std::string> contracted;
};

Case build_case(const SynthConfig& cfg, std::mt19937_64& rng) {
  Case c;
  GridCase& g = c.grid;
  g.buses = {{"TESLA", "NORTH"}, {"NWIND", "NORTH"},    {"NCENT", "NORTH"},
             {"TYLERGND", "EAST"}, {"ECOAL", "EAST"}, {"ECENT", "EAST"}};
  g.lines = {{"NWIND-NCENT", "NWIND", "NCENT", 20, 5000},      {"NWIND-TESLA", "NWIND", "TESLA", 20, 5000},
             {"TESLA-NCENT", "TESLA", "NCENT", 20, 5000},      {"ECOAL-ECENT", "ECOAL", "ECENT", 20, 8000},
             {"ECENT-TYLERGND", "ECENT", "TYLERGND", 20, 8000}, {"ECOAL-TYLERGND", "ECOAL", "TYLERGND", 20, 8000},
             {"NCENT-ECENT", "NCENT", "ECENT", 10, cfg.tie_limit}, {"TESLA-TYLERGND", "TESLA", "TYLERGND", 5, cfg.flex_tie_limit}};
  g.slack_bus = "ECENT";

  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return round2(lo + (hi - lo) * u(rng)); };
  auto renewable_bid = [&]() { return u(rng) < cfg.negative_bid_fraction ? -uniform(0.5, 3.0) : 0.0; };
  auto add = [&](GeneratorSpec s) {
    g.generators.push_back(std::move(s));
    return static_cast<int>(g.generators.size()) - 1;
  };

  const int n_wind = 8;
  for (int i = 0; i < n_wind; ++i) {
    const std::string bus = i < 6 ? "NWIND" : "TESLA";
    c.north_wind.push_back(add(gen("wind_n" + std::to_string(i + 1), bus, Technology::wind,
                                   cfg.north_wind_capacity / n_wind, renewable_bid())));
  }
  for (int i = 0; i < 2; ++i) {
    c.east_wind.push_back(add(gen("wind_e" + std::to_string(i + 1), "ECOAL", Technology::wind,
                                  cfg.east_wind_capacity / 2, renewable_bid())));
  }
  const std::array<const char*, 5> solar_bus = {"NCENT", "NCENT", "NCENT", "ECENT", "ECENT"};
  for (int i = 0; i < 5; ++i) {
    c.solar.push_back(add(gen("solar_" + std::to_string(i + 1), solar_bus[i], Technology::solar,
                              cfg.solar_capacity / 5, renewable_bid())));
  }
  add(gen("nuclear_1", "ECENT", Technology::nuclear, 1000, uniform(1.0, 3.0)));
  for (int i = 0; i < 6; ++i) add(gen("coal_" + std::to_string(i + 1), "ECOAL", Technology::coal, 500, uniform(12, 22)));
  for (int i = 0; i < 6; ++i) {
    add(gen("gas_cc_e" + std::to_string(i + 1), i % 2 ? "TYLERGND" : "ECENT", Technology::gas_cc, 450, uniform(20, 32)));
  }
  for (int i = 0; i < 3; ++i) add(gen("gas_cc_n" + std::to_string(i + 1), "NCENT", Technology::gas_cc, 300, uniform(20, 32)));
  for (int i = 0; i < 3; ++i) add(gen("gas_st_" + std::to_string(i + 1), "ECENT", Technology::gas_st, 250, uniform(28, 38)));
  for (int i = 0; i < 5; ++i) {
    add(gen("gas_ct_e" + std::to_string(i + 1), i % 2 ? "ECENT" : "TYLERGND", Technology::gas_ct, 250, uniform(34, 45)));
  }
  for (int i = 0; i < 2; ++i) add(gen("gas_ct_n" + std::to_string(i + 1), "TESLA", Technology::gas_ct, 200, uniform(34, 45)));
  for (int i = 0; i < 3; ++i) add(gen("gas_ic_" + std::to_string(i + 1), "ECENT", Technology::gas_ic, 100, uniform(38, 45)));

  c.contracted = {g.generators[c.north_wind[0]].id, g.generators[c.north_wind[1]].id, g.generators[c.solar[0]].id};
  return c;
}

/// Smooth 0..1 summer weight and the ground-truth season flag.
struct Season {
  double weight;
  bool summer;
};

Season season_of(int day) {
  const double s = std::sin(2.0 * kPi * (day - 109) / 365.0);
  return {0.5 * (1.0 + std::tanh(2.5 * s)), s > 0.0};
}

double demand_shape(int h, double w) {
  auto bump = [](double h, double c, double width) { return std::exp(-(h - c) * (h - c) / width); };
  const double winter = 1.0 + 0.12 * bump(h, 8, 8) + 0.18 * bump(h, 19, 8) - 0.12 * bump(h, 3, 10);
  const double summer = 1.0 + 0.30 * bump(h, 17, 18) - 0.15 * bump(h, 4, 12);
  return (1.0 - w) * winter + w * summer;
}

}  // namespace

void SynthConfig::check() const {
  if (days < 1) throw ConfigError("synthetic year needs at least one day");
  for (double v : {summer_winter_ratio, summer_renewable_derate, winter_demand, north_wind_capacity, solar_capacity,
                   tie_limit, flex_tie_limit}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("synthetic ratios, capacities and limits must be > 0");
  }
  if (!(north_share > 0.0 && north_share < 1.0)) throw ConfigError("north_share must be in (0, 1)");
  if (!(negative_bid_fraction >= 0.0 && negative_bid_fraction <= 1.0)) {
    throw ConfigError("negative_bid_fraction must be in [0, 1]");
  }
  if (!(east_wind_capacity >= 0.0) || !(demand_noise >= 0.0)) throw ConfigError("negative synthetic parameter");
}

std::string synthetic_date(int start_year, int day) {
  using namespace std::chrono;
  const year_month_day ymd{sys_days{year{start_year} / January / 1} + std::chrono::days{day}};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

StrategyId constructed_label(bool high_gnd, double min_lmp, double threshold) {
  if (high_gnd) return min_lmp <= threshold ? StrategyId::lmp : StrategyId::wme;
  return min_lmp <= threshold ? StrategyId::ws : StrategyId::zws;
}

ScenarioBundle generate_synthetic_year(const SynthConfig& cfg) {
  cfg.check();
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  Case c = build_case(cfg, rng);
  ScenarioBundle b;
  b.grid = c.grid;
  b.seed = cfg.seed;
  b.flex = {FlexLoadSpec{"TESLA"}, FlexLoadSpec{"TYLERGND"}};
  b.cfeg_units = c.contracted;
  const auto& grid = b.grid;
  const Eigen::Index nb = static_cast<Eigen::Index>(grid.buses.size());
  const Eigen::Index ng = static_cast<Eigen::Index>(grid.generators.size());

  // Scale the seasonal swing so mean summer / mean winter demand hits the ratio.
  double a = 0, wsum = 0;
  int na = 0, nw = 0;
  for (int d = 0; d < cfg.days; ++d) {
    const Season s = season_of(d);
    if (s.summer) {
      a += s.weight;
      ++na;
    } else {
      wsum += s.weight;
      ++nw;
    }
  }
  double swing = cfg.summer_winter_ratio - 1.0;
  if (na > 0 && nw > 0) {
    a /= na;
    wsum /= nw;
    swing = (cfg.summer_winter_ratio - 1.0) / (a - cfg.summer_winter_ratio * wsum);
  }

  const double n = cfg.north_share;
  const std::array<double, 6> share = {0.25 * n, 0.15 * n, 0.60 * n, 0.18 * (1 - n), 0.20 * (1 - n), 0.62 * (1 - n)};

  double wind_state = 0.0;
  std::vector<HourlyVector> gnd;
  std::vector<double> min_lmp;
  for (int d = 0; d < cfg.days; ++d) {
    const Season season = season_of(d);
    DayScenario day;
    day.date = synthetic_date(cfg.start_year, d);
    day.bus_demand = HourlyTable::Zero(nb, kHoursPerDay);
    day.availability = HourlyTable::Ones(ng, kHoursPerDay);

    const double level = cfg.winter_demand * (1.0 + swing * season.weight) * (1.0 + cfg.demand_noise * normal(rng));
    double mean_shape = 0.0;
    for (int h = 0; h < kHoursPerDay; ++h) mean_shape += demand_shape(h, season.weight) / kHoursPerDay;
    for (int h = 0; h < kHoursPerDay; ++h) {
      const double system = level * demand_shape(h, season.weight) / mean_shape;
      for (Eigen::Index bus = 0; bus < nb; ++bus) {
        day.bus_demand(bus, h) = std::max(0.0, system * share[bus] * (1.0 + 0.01 * normal(rng)));
      }
    }

    const double derate = 1.0 - (1.0 - cfg.summer_renewable_derate) * season.weight;
    wind_state = 0.75 * wind_state + 0.35 * normal(rng);
    const double wind_mean = std::clamp(0.38 + 0.22 * wind_state, 0.03, 0.85) * derate;
    auto wind_profile = [&](const std::vector<int>& units, double phase) {
      for (int g : units) {
        for (int h = 0; h < kHoursPerDay; ++h) {
          const double v = wind_mean * (1.0 + 0.35 * std::cos(2.0 * kPi * (h - phase) / 24.0)) + 0.04 * normal(rng);
          day.availability(g, h) = std::clamp(v, 0.0, 1.0);
        }
      }
    };
    wind_profile(c.north_wind, 2.0);
    wind_profile(c.east_wind, 5.0);
    const double cloud = 0.55 + 0.45 * u(rng);
    const double sunrise = 7.0 - season.weight;
    const double daylight = 11.0 + 2.0 * season.weight;
    for (int g : c.solar) {
      for (int h = 0; h < kHoursPerDay; ++h) {
        const double x = (h + 0.5 - sunrise) / daylight;
        const double bell = x > 0.0 && x < 1.0 ? std::sin(kPi * x) : 0.0;
        day.availability(g, h) = std::clamp(bell * cloud * derate * (1.0 + 0.03 * normal(rng)), 0.0, 1.0);
      }
    }
    day.check(grid);

    // Feasibility with every flexible load flat, then the single-load baseline.
    const DispatchResult both = solve_day(grid, day, LoadShape::flat(b.flex));
    (void)both;
    const std::array<FlexLoadSpec, 1> first{b.flex.front()};
    const DispatchResult base = solve_day(grid, day, LoadShape::flat(first));
    for (const auto& f : b.flex) b.signals.add(day.date, wme_surrogate(grid, base, f.bus));
    b.signals.add(day.date, cfeg_surrogate(grid, base, c.contracted, std::string(kSystemScope)));
    gnd.push_back(base.demand - base.available_renewables);
    min_lmp.push_back(base.lmp.row(grid.bus_index(first[0].bus)).minCoeff());
    b.labels.push_back({day.date, season.summer ? Regime::high_gnd : Regime::low_gnd, StrategyId::base});
    b.days.push_back(std::move(day));
  }

  std::vector<double> totals;
  for (const auto& g : gnd) totals.push_back(g.sum());
  std::vector<double> sorted = totals;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  std::array<std::vector<double>, 2> by_regime;
  for (std::size_t d = 0; d < totals.size(); ++d) by_regime[totals[d] > median].push_back(min_lmp[d]);
  std::array<double, 2> threshold{};
  for (int r = 0; r < 2; ++r) {
    auto& v = by_regime[r];
    std::sort(v.begin(), v.end());
    threshold[r] = v.empty() ? 0.0 : v[v.size() / 2];
  }
  for (std::size_t d = 0; d < b.labels.size(); ++d) {
    const bool high = totals[d] > median;
    b.labels[d].strategy = constructed_label(high, min_lmp[d], threshold[high]);
  }
  return b;
}

}  // namespace gridshift
