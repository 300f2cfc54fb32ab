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

#ifndef GRIDSHIFT_STRATEGIES_HPP
#define GRIDSHIFT_STRATEGIES_HPP

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gridshift/grid_model.hpp"
#include "gridshift/signals.hpp"

namespace gridshift {

enum class StrategyId { avg, base, cfeg, overnight, lme, lmp, ws, wme, zws, opt };

inline constexpr std::array<StrategyId, 10> kAllStrategies = {
    StrategyId::avg, StrategyId::base, StrategyId::cfeg, StrategyId::overnight, StrategyId::lme,
    StrategyId::lmp, StrategyId::ws,   StrategyId::wme,  StrategyId::zws,       StrategyId::opt};

std::string_view to_string(StrategyId id);
/// Throws ConfigError for unknown names.
StrategyId strategy_from_string(std::string_view name);

/// The signal a strategy ranks hours by; none for base, overnight and opt.
std::optional<SignalId> strategy_signal(StrategyId id);

struct ShapePlan {
  StrategyId strategy = StrategyId::base;
  LoadShape shape;
  std::vector<SignalVector> signals;  // snapshot of the signals used
};

/// Ranks hours by the signal in its orientation (ties by ascending hour):
/// the first hours_up get base + delta, the last hours_down base - delta.
LoadShape shape_from_signal(const SignalVector& signal, const FlexLoadSpec& spec);
LoadShape shape_from_values(const HourlyVector& values, Orientation orient, const FlexLoadSpec& spec);

/// Shed noon to 9 pm (hours 12-20), add load 10 pm to 7 am (22, 23, 0-6).
LoadShape overnight_shape(const FlexLoadSpec& spec);

/// Joint ranking of the 48 (hour, node) slots of two flexible loads; the
/// first sum(hours_up) slots go up, the last sum(hours_down) go down.
/// Ties by hour, then node.
LoadShape two_node_shape(const SignalVector& first, const SignalVector& second,
                         std::span<const FlexLoadSpec> specs);

/// Produces the co-optimised benchmark shape for the given loads.
using BenchmarkFn = std::function<LoadShape(std::span<const FlexLoadSpec>)>;

/// Shape of one strategy for one or two flexible loads.  Signals are looked
/// up per load (bus, then zone, then system scope).  Throws ConfigError
/// naming the signal when it is missing.
ShapePlan plan_day(StrategyId strategy, const SignalSet& signals, const GridCase& grid,
                   std::span<const FlexLoadSpec> specs, const BenchmarkFn& benchmark = {});

}  // namespace gridshift

#endif  // GRIDSHIFT_STRATEGIES_HPP
