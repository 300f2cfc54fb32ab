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

#ifndef GRIDSHIFT_PIPELINE_HPP
#define GRIDSHIFT_PIPELINE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gridshift/analysis.hpp"
#include "gridshift/policy.hpp"
#include "gridshift/scenario_io.hpp"
#include "gridshift/signals.hpp"
#include "gridshift/strategies.hpp"

namespace gridshift {

/// Label of the records produced by a cherry-pick policy.
inline constexpr std::string_view kPolicyLabel = "cherry_pick";

struct RunOptions {
  /// Flexible buses (one or two); empty selects the bundle's first load.
  std::vector<std::string> nodes;
  std::vector<StrategyId> strategies;
  std::optional<CherryPickPolicy> policy;
  /// Half-open day index range; empty runs every day.
  std::optional<std::pair<std::size_t, std::size_t>> days;
  int jobs = 1;
  bool keep_going = false;
  /// Keep every dispatch in memory.
  bool keep_dispatch = false;
  DispatchOptions dispatch;
  std::vector<double> co2_penalty_sweep = BenchmarkConfig{}.co2_penalty_sweep;
  RegimeOptions regimes;
};

struct DayRun {
  std::string date;
  Regime regime = Regime::low_gnd;
  Availability availability;
  DayFeatures features;
  DispatchResult baseline;
  std::map<StrategyId, DispatchResult> runs;  // kept with keep_dispatch
  std::vector<ShapePlan> plans;
  std::vector<ImpactRecord> records;
  /// Strategies evaluated, with emissions in tCO2.
  std::vector<std::pair<StrategyId, double>> emissions;
  std::optional<StrategyId> policy_choice;
  std::string error;  // set when the day failed under keep_going
};

struct YearRun {
  std::vector<FlexLoadSpec> flex;
  std::vector<DayRun> days;
  RegimeFit regimes;
  /// Daily GND profiles (flat flexible load, available renewables).
  std::vector<HourlyVector> gnd;

  std::vector<ImpactRecord> records() const;
  int failed_days() const;
};

/// Flexible load specs of the requested nodes.  Throws ConfigError for
/// unknown buses or a count other than one or two.
std::vector<FlexLoadSpec> select_flex(const ScenarioBundle& bundle, const std::vector<std::string>& nodes);

/// Day-ahead GND of each day with flat flexible loads.
std::vector<HourlyVector> scenario_gnd(const ScenarioBundle& bundle, const std::vector<FlexLoadSpec>& flex);

/// Regime per day; fewer than four days are all low_gnd.
RegimeFit classify_days(const std::vector<HourlyVector>& gnd, const RegimeOptions& options);

/// Runs the baseline, every requested strategy and the policy for each day,
/// spreading days over options.jobs workers.  Days come back in bundle
/// order.  The first failing day (in date order) is rethrown unless
/// keep_going is set.
YearRun run_year(const ScenarioBundle& bundle, const RunOptions& options);

/// CSV exports of a run; each is a pure function of the run.
std::string shapes_csv(const YearRun& run);
std::string features_csv(const YearRun& run);
std::string days_csv(const YearRun& run);
std::string dispatch_generation_csv(const GridCase& grid, const YearRun& run);
std::string dispatch_emissions_csv(const YearRun& run);
std::string dispatch_lmp_csv(const GridCase& grid, const YearRun& run);
std::string dispatch_flow_csv(const GridCase& grid, const YearRun& run);

}  // namespace gridshift

#endif  // GRIDSHIFT_PIPELINE_HPP
