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

#include "gridshift/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace gridshift {

namespace {

constexpr std::array<std::string_view, 10> kStrategyNames = {"avg", "base", "cfeg", "overnight", "lme",
                                                             "lmp", "ws",   "wme",  "zws",       "opt"};

struct Slot {
  int node;
  int hour;
  double value;
};

/// Stable ranking, best slot first.
void rank(std::vector<Slot>& slots, Orientation orient) {
  if (orient == Orientation::load_where_low) {
    std::stable_sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) { return a.value < b.value; });
  } else {
    std::stable_sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) { return a.value > b.value; });
  }
}

std::vector<NodeSchedule> flat_schedules(std::span<const FlexLoadSpec> specs) {
  std::vector<NodeSchedule> out(specs.size());
  for (std::size_t n = 0; n < specs.size(); ++n) {
    out[n].bus = specs[n].bus;
    out[n].mw.fill(specs[n].base);
  }
  return out;
}

LoadShape shape_from_slots(std::vector<Slot> slots, Orientation orient, std::span<const FlexLoadSpec> specs) {
  for (const auto& s : slots) {
    if (!std::isfinite(s.value)) throw StructuralError("signal has non-finite values");
  }
  int ups = 0;
  int downs = 0;
  for (const auto& spec : specs) {
    spec.check();
    ups += spec.hours_up;
    downs += spec.hours_down;
  }
  rank(slots, orient);
  auto schedules = flat_schedules(specs);
  for (int k = 0; k < ups; ++k) {
    schedules[slots[k].node].mw[slots[k].hour] = specs[slots[k].node].high();
  }
  for (int k = 0; k < downs; ++k) {
    const Slot& s = slots[slots.size() - 1 - k];
    schedules[s.node].mw[s.hour] = specs[s.node].low();
  }
  return LoadShape::make(specs, std::move(schedules));
}

}  // namespace

std::string_view to_string(StrategyId id) { return kStrategyNames[static_cast<std::size_t>(id)]; }

StrategyId strategy_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kStrategyNames.size(); ++i) {
    if (kStrategyNames[i] == name) return kAllStrategies[i];
  }
  throw ConfigError("unknown strategy '" + std::string(name) + "'");
}

std::optional<SignalId> strategy_signal(StrategyId id) {
  switch (id) {
    case StrategyId::avg: return SignalId::avg_ci;
    case StrategyId::cfeg: return SignalId::cfeg;
    case StrategyId::lme: return SignalId::lme;
    case StrategyId::lmp: return SignalId::lmp;
    case StrategyId::ws: return SignalId::ws;
    case StrategyId::wme: return SignalId::wme;
    case StrategyId::zws: return SignalId::zws;
    case StrategyId::base:
    case StrategyId::overnight:
    case StrategyId::opt:
      return std::nullopt;
  }
  return std::nullopt;
}

LoadShape shape_from_values(const HourlyVector& values, Orientation orient, const FlexLoadSpec& spec) {
  std::vector<Slot> slots;
  for (int h = 0; h < kHoursPerDay; ++h) slots.push_back({0, h, values[h]});
  return shape_from_slots(std::move(slots), orient, std::span<const FlexLoadSpec>(&spec, 1));
}

LoadShape shape_from_signal(const SignalVector& signal, const FlexLoadSpec& spec) {
  return shape_from_values(signal.values, orientation(signal.name), spec);
}

LoadShape overnight_shape(const FlexLoadSpec& spec) {
  spec.check();
  if (spec.hours_up != 9 || spec.hours_down != 9) {
    throw ConfigError("overnight strategy is defined for 9 up / 9 down hours");
  }
  auto schedules = flat_schedules(std::span<const FlexLoadSpec>(&spec, 1));
  for (int h = 12; h <= 20; ++h) schedules[0].mw[h] = spec.low();
  for (int h : {22, 23, 0, 1, 2, 3, 4, 5, 6}) schedules[0].mw[h] = spec.high();
  return LoadShape::make(std::span<const FlexLoadSpec>(&spec, 1), std::move(schedules));
}

LoadShape two_node_shape(const SignalVector& first, const SignalVector& second, std::span<const FlexLoadSpec> specs) {
  if (specs.size() != 2) throw StructuralError("two-node shaping needs two flexible loads");
  if (first.name != second.name) throw ConfigError("two-node shaping needs the same signal at both nodes");
  if (specs[0].delta != specs[1].delta) throw ConfigError("two-node shaping needs equal delta at both nodes");
  std::vector<Slot> slots;
  for (int h = 0; h < kHoursPerDay; ++h) {
    slots.push_back({0, h, first.values[h]});
    slots.push_back({1, h, second.values[h]});
  }
  return shape_from_slots(std::move(slots), orientation(first.name), specs);
}

ShapePlan plan_day(StrategyId strategy, const SignalSet& signals, const GridCase& grid,
                   std::span<const FlexLoadSpec> specs, const BenchmarkFn& benchmark) {
  if (specs.empty() || specs.size() > 2) throw ConfigError("one or two flexible loads are supported");
  switch (strategy) {
    case StrategyId::base:
      return {strategy, LoadShape::flat(specs), {}};
    case StrategyId::overnight: {
      auto schedules = flat_schedules(specs);
      for (std::size_t n = 0; n < specs.size(); ++n) schedules[n] = overnight_shape(specs[n])[0];
      return {strategy, LoadShape::make(specs, std::move(schedules)), {}};
    }
    case StrategyId::opt:
      if (!benchmark) throw ConfigError("strategy opt needs the co-optimisation benchmark");
      return {strategy, benchmark(specs), {}};
    default:
      break;
  }
  const SignalId id = *strategy_signal(strategy);
  std::vector<SignalVector> used;
  for (const auto& spec : specs) {
    const SignalVector* s = signals.resolve(id, grid, spec.bus);
    if (s == nullptr) {
      throw ConfigError("signal " + std::string(to_string(id)) + " missing for " + spec.bus + " (strategy " +
                        std::string(to_string(strategy)) + ")");
    }
    used.push_back(*s);
  }
  if (specs.size() == 1) return {strategy, shape_from_signal(used[0], specs[0]), used};
  return {strategy, two_node_shape(used[0], used[1], specs), used};
}

}  // namespace gridshift
