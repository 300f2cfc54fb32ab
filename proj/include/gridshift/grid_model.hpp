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

#ifndef GRIDSHIFT_GRID_MODEL_HPP
#define GRIDSHIFT_GRID_MODEL_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridshift/common.hpp"

namespace gridshift {

enum class Technology {
  wind,
  solar,
  nuclear,
  coal,
  gas_cc,
  gas_ct,
  gas_st,
  gas_ic,
  hydro,
  biomass,
  battery,
};

inline constexpr std::size_t kTechnologyCount = 11;

inline constexpr std::array<Technology, kTechnologyCount> kAllTechnologies = {
    Technology::wind,   Technology::solar,  Technology::nuclear,
    Technology::coal,   Technology::gas_cc, Technology::gas_ct,
    Technology::gas_st, Technology::gas_ic, Technology::hydro,
    Technology::biomass, Technology::battery};

std::string_view to_string(Technology tech);
/// Throws ConfigError for unknown names.
Technology technology_from_string(std::string_view name);

/// Wind and solar only; these are the units subtracted in grid net demand.
constexpr bool is_intermittent(Technology tech) {
  return tech == Technology::wind || tech == Technology::solar;
}
constexpr bool is_gas(Technology tech) {
  return tech == Technology::gas_cc || tech == Technology::gas_ct ||
         tech == Technology::gas_st || tech == Technology::gas_ic;
}

/// Carbon intensity per technology in gCO2/kWh.  Total by construction.
class CarbonTable {
 public:
  /// wind 11, solar 45, nuclear 12, coal 820, gas 490, biomass 230, hydro 24.
  /// Battery discharge is counted at 0.
  static CarbonTable defaults();

  double operator[](Technology tech) const {
    return values_[static_cast<std::size_t>(tech)];
  }
  void set(Technology tech, double g_per_kwh);

 private:
  std::array<double, kTechnologyCount> values_{};
};

struct BusSpec {
  std::string id;
  std::string zone;
};

struct LineSpec {
  std::string id;
  std::string from_bus;
  std::string to_bus;
  double susceptance = 0.0;  // p.u., 1/reactance
  double flow_limit = 0.0;   // MW
};

struct GeneratorSpec {
  std::string id;
  std::string bus;
  Technology technology = Technology::gas_cc;
  double p_min = 0.0;
  double p_max = 0.0;
  double bid_price = 0.0;  // $/MWh
  std::optional<double> daily_energy_budget;  // MWh; empty means unbounded
};

struct GridCase {
  std::vector<BusSpec> buses;
  std::vector<LineSpec> lines;
  std::vector<GeneratorSpec> generators;
  CarbonTable carbon = CarbonTable::defaults();
  std::string slack_bus;

  /// Index of a bus id, or -1.
  int bus_index(std::string_view id) const;
  /// Index of a generator id, or -1.
  int generator_index(std::string_view id) const;
  bool has_zone(std::string_view zone) const;
  std::vector<std::string> zones() const;
  bool has_energy_budgets() const;
};

struct Violation {
  std::string entity;
  std::string rule;
};

/// Every broken GridCase invariant, each naming the offending entity.
std::vector<Violation> validate_case(const GridCase& grid);

/// Shape parameters of one flexible load; MW values are integral.
struct FlexLoadSpec {
  std::string bus;
  int base = 400;
  int delta = 80;
  int hours_up = 9;
  int hours_down = 9;
  int hours_flat = 6;

  int low() const { return base - delta; }
  int high() const { return base + delta; }
  /// Throws StructuralError when the counts or levels are inconsistent.
  void check() const;
};

struct NodeSchedule {
  std::string bus;
  std::array<int, kHoursPerDay> mw{};
};

/// Hourly schedules of one or two flexible loads.  Instances always hold the
/// daily energy budget exactly and use only the three admissible levels.
class LoadShape {
 public:
  /// Validates against the specs (one schedule per spec, same order).
  static LoadShape make(std::span<const FlexLoadSpec> specs,
                        std::vector<NodeSchedule> schedules);
  static LoadShape flat(std::span<const FlexLoadSpec> specs);

  const std::vector<NodeSchedule>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  const NodeSchedule& operator[](std::size_t i) const { return nodes_[i]; }

  bool operator==(const LoadShape&) const = default;

 private:
  explicit LoadShape(std::vector<NodeSchedule> nodes) : nodes_(std::move(nodes)) {}
  std::vector<NodeSchedule> nodes_;
};

inline bool operator==(const NodeSchedule& a, const NodeSchedule& b) {
  return a.bus == b.bus && a.mw == b.mw;
}

/// Sum of one day's hourly values; the span must hold exactly 24 entries.
long total_schedule_energy(std::span<const int> hourly_mw);
/// Energy of all nodes in MWh.
long total_shape_energy(const LoadShape& shape);

}  // namespace gridshift

#endif  // GRIDSHIFT_GRID_MODEL_HPP
