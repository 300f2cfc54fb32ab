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

#ifndef GRIDSHIFT_REPORTS_HPP
#define GRIDSHIFT_REPORTS_HPP

#include <string>
#include <vector>

#include "gridshift/analysis.hpp"
#include "gridshift/pipeline.hpp"

namespace gridshift {

/// Per-strategy yearly totals, one row per strategy.
std::string summary_csv(const std::vector<StrategyTotals>& totals);

/// Yearly CO2 and price change split by regime.
std::string regime_summary_csv(const std::vector<ImpactRecord>& records);

/// Marginal technology counts per min(LMP) bin.
std::string marginal_csv(const MarginalTable& table);

/// Demand-increase attribution per (regime, bin).
std::string attribution_csv(const std::vector<AttributionBin>& bins);

std::string thresholds_csv(const std::array<DerivedThreshold, 2>& thresholds);

/// Analyses that need the dispatches of a run.  The bus is the flexible bus
/// whose min(LMP) bins the days.
struct YearAnalysis {
  MarginalTable marginal;
  std::vector<AttributionRow> attribution;
  std::array<DerivedThreshold, 2> thresholds;
  /// Per strategy with a kept dispatch: peak-hour deltas and peak GND change.
  std::vector<std::pair<StrategyId, PeakDelta>> peak;
  std::vector<std::pair<StrategyId, double>> peak_gnd;

  std::string peak_csv() const;
};

YearAnalysis analyze_year(const GridCase& grid, const YearRun& run, std::size_t node = 0);

}  // namespace gridshift

#endif  // GRIDSHIFT_REPORTS_HPP
