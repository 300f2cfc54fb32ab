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

#include "gridshift/grid_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_map>

namespace gridshift {

namespace {

constexpr std::array<std::string_view, kTechnologyCount> kTechnologyNames = {
    "wind",   "solar",  "nuclear", "coal",    "gas_cc", "gas_ct",
    "gas_st", "gas_ic", "hydro",   "biomass", "battery"};

}  // namespace

std::string_view to_string(Technology tech) {
  return kTechnologyNames[static_cast<std::size_t>(tech)];
}

Technology technology_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kTechnologyCount; ++i) {
    if (kTechnologyNames[i] == name) return kAllTechnologies[i];
  }
  throw ConfigError("unknown technology '" + std::string(name) + "'");
}

CarbonTable CarbonTable::defaults() {
  CarbonTable t;
  t.set(Technology::wind, 11.0);
  t.set(Technology::solar, 45.0);
  t.set(Technology::nuclear, 12.0);
  t.set(Technology::coal, 820.0);
  t.set(Technology::gas_cc, 490.0);
  t.set(Technology::gas_ct, 490.0);
  t.set(Technology::gas_st, 490.0);
  t.set(Technology::gas_ic, 490.0);
  t.set(Technology::hydro, 24.0);
  t.set(Technology::biomass, 230.0);
  t.set(Technology::battery, 0.0);
  return t;
}

void CarbonTable::set(Technology tech, double g_per_kwh) {
  if (!(g_per_kwh >= 0.0) || !std::isfinite(g_per_kwh)) {
    throw ConfigError("carbon intensity of " + std::string(to_string(tech)) +
                      " must be finite and >= 0");
  }
  values_[static_cast<std::size_t>(tech)] = g_per_kwh;
}

int GridCase::bus_index(std::string_view id) const {
  for (std::size_t i = 0; i < buses.size(); ++i) {
    if (buses[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

int GridCase::generator_index(std::string_view id) const {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

bool GridCase::has_zone(std::string_view zone) const {
  return std::any_of(buses.begin(), buses.end(),
                     [&](const BusSpec& b) { return b.zone == zone; });
}

std::vector<std::string> GridCase::zones() const {
  std::vector<std::string> out;
  for (const auto& b : buses) {
    if (std::find(out.begin(), out.end(), b.zone) == out.end()) out.push_back(b.zone);
  }
  return out;
}

bool GridCase::has_energy_budgets() const {
  return std::any_of(generators.begin(), generators.end(),
                     [](const GeneratorSpec& g) { return g.daily_energy_budget.has_value(); });
}

std::vector<Violation> validate_case(const GridCase& grid) {
  std::vector<Violation> out;
  auto add = [&out](std::string entity, std::string rule) {
    out.push_back({std::move(entity), std::move(rule)});
  };

  std::unordered_map<std::string, int> bus_ids;
  for (std::size_t i = 0; i < grid.buses.size(); ++i) {
    const auto& b = grid.buses[i];
    if (b.id.empty()) add("bus #" + std::to_string(i), "empty id");
    if (!bus_ids.emplace(b.id, static_cast<int>(i)).second) {
      add("bus " + b.id, "duplicate id");
    }
    if (b.zone.empty()) add("bus " + b.id, "missing zone");
  }
  if (grid.buses.empty()) add("case", "no buses");

  std::set<std::string> line_ids;
  for (const auto& l : grid.lines) {
    const std::string name = "line " + l.id;
    if (!line_ids.insert(l.id).second) add(name, "duplicate id");
    const bool from_ok = bus_ids.count(l.from_bus) > 0;
    const bool to_ok = bus_ids.count(l.to_bus) > 0;
    if (!from_ok) add(name, "from_bus '" + l.from_bus + "' does not exist");
    if (!to_ok) add(name, "to_bus '" + l.to_bus + "' does not exist");
    if (l.from_bus == l.to_bus) add(name, "from_bus equals to_bus");
    if (!(l.susceptance > 0.0) || !std::isfinite(l.susceptance)) {
      add(name, "susceptance must be > 0");
    }
    if (!(l.flow_limit > 0.0)) add(name, "flow_limit must be > 0");
  }

  std::set<std::string> gen_ids;
  for (const auto& g : grid.generators) {
    const std::string name = "generator " + g.id;
    if (!gen_ids.insert(g.id).second) add(name, "duplicate id");
    if (bus_ids.count(g.bus) == 0) add(name, "bus '" + g.bus + "' does not exist");
    if (!(g.p_min >= 0.0) || !(g.p_min <= g.p_max) || !std::isfinite(g.p_max)) {
      add(name, "requires 0 <= p_min <= p_max");
    }
    if (!std::isfinite(g.bid_price)) add(name, "bid_price must be finite");
    if (g.daily_energy_budget && !(*g.daily_energy_budget >= 0.0)) {
      add(name, "daily_energy_budget must be >= 0");
    }
  }

  if (bus_ids.count(grid.slack_bus) == 0) {
    add("case", "slack_bus '" + grid.slack_bus + "' does not exist");
  }

  // Connectivity over lines whose endpoints both exist.
  if (!grid.buses.empty()) {
    std::vector<std::vector<int>> adj(grid.buses.size());
    for (const auto& l : grid.lines) {
      auto f = bus_ids.find(l.from_bus);
      auto t = bus_ids.find(l.to_bus);
      if (f == bus_ids.end() || t == bus_ids.end()) continue;
      adj[f->second].push_back(t->second);
      adj[t->second].push_back(f->second);
    }
    std::vector<char> seen(grid.buses.size(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          q.push(v);
        }
      }
    }
    for (std::size_t i = 0; i < grid.buses.size(); ++i) {
      if (!seen[i]) add("bus " + grid.buses[i].id, "not connected to the network");
    }
  }
  return out;
}

void FlexLoadSpec::check() const {
  if (hours_up != hours_down) {
    throw StructuralError("flex load at " + bus + ": hours_up must equal hours_down");
  }
  if (hours_up < 0 || hours_flat < 0 || hours_up + hours_down + hours_flat != kHoursPerDay) {
    throw StructuralError("flex load at " + bus + ": hour counts must sum to 24");
  }
  if (delta < 0 || base - delta <= 0) {
    throw StructuralError("flex load at " + bus + ": requires 0 <= delta < base");
  }
}

long total_schedule_energy(std::span<const int> hourly_mw) {
  if (hourly_mw.size() != static_cast<std::size_t>(kHoursPerDay)) {
    throw StructuralError("schedule has " + std::to_string(hourly_mw.size()) +
                          " hours, expected 24");
  }
  return std::accumulate(hourly_mw.begin(), hourly_mw.end(), 0L);
}

long total_shape_energy(const LoadShape& shape) {
  long total = 0;
  for (const auto& n : shape.nodes()) total += total_schedule_energy(n.mw);
  return total;
}

LoadShape LoadShape::make(std::span<const FlexLoadSpec> specs,
                          std::vector<NodeSchedule> schedules) {
  if (specs.empty()) throw StructuralError("load shape needs at least one node");
  if (specs.size() != schedules.size()) {
    throw StructuralError("load shape has " + std::to_string(schedules.size()) +
                          " schedules for " + std::to_string(specs.size()) + " nodes");
  }
  long budget = 0;
  long energy = 0;
  for (std::size_t n = 0; n < specs.size(); ++n) {
    const auto& spec = specs[n];
    spec.check();
    const auto& s = schedules[n];
    if (s.bus != spec.bus) {
      throw StructuralError("schedule bus '" + s.bus + "' does not match spec bus '" +
                            spec.bus + "'");
    }
    int ups = 0;
    int downs = 0;
    for (int h = 0; h < kHoursPerDay; ++h) {
      const int v = s.mw[h];
      if (v == spec.high()) {
        ++ups;
      } else if (v == spec.low()) {
        ++downs;
      } else if (v != spec.base) {
        throw StructuralError("schedule at " + s.bus + " hour " + std::to_string(h) +
                              " has inadmissible level " + std::to_string(v));
      }
    }
    // The flat baseline is the one admissible single-node shape without moves.
    const bool flat = ups == 0 && downs == 0;
    if (specs.size() == 1 && !flat && (ups != spec.hours_up || downs != spec.hours_down)) {
      throw StructuralError("schedule at " + s.bus + " has " + std::to_string(ups) + " up / " +
                            std::to_string(downs) + " down hours, expected " +
                            std::to_string(spec.hours_up) + "/" +
                            std::to_string(spec.hours_down));
    }
    budget += static_cast<long>(kHoursPerDay) * spec.base;
    energy += total_schedule_energy(s.mw);
  }
  if (energy != budget) {
    throw StructuralError("load shape energy " + std::to_string(energy) +
                          " MWh differs from budget " + std::to_string(budget) + " MWh");
  }
  return LoadShape(std::move(schedules));
}

LoadShape LoadShape::flat(std::span<const FlexLoadSpec> specs) {
  std::vector<NodeSchedule> schedules;
  for (const auto& spec : specs) {
    NodeSchedule s;
    s.bus = spec.bus;
    s.mw.fill(spec.base);
    schedules.push_back(s);
  }
  return make(specs, std::move(schedules));
}

}  // namespace gridshift
