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

#ifndef GRIDSHIFT_ANALYSIS_HPP
#define GRIDSHIFT_ANALYSIS_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridshift/dispatch.hpp"
#include "gridshift/regimes.hpp"

namespace gridshift {

/// Daily counterfactual outcome against the flat baseline.  Positive savings
/// mean the counterfactual is better.
struct ImpactRecord {
  std::string date;
  std::string strategy;           // strategy id, or a policy label
  double co2_saved = 0.0;         // tCO2
  double cost_saved = 0.0;        // $, generation cost
  double payment_saved = 0.0;     // $, load payment
  double avg_price_change = 0.0;  // $/MWh, demand-weighted LMP, counterfactual - baseline
  double demand = 0.0;            // MWh, baseline total incl. flexible load
  Regime regime = Regime::low_gnd;
  std::vector<double> min_lmp;    // baseline, per flexible bus

  bool operator==(const ImpactRecord&) const = default;
};

/// Demand-weighted LMP over the day.
double average_price(const DispatchResult& dispatch);

/// Fills date and the deltas; throws ConfigError when the dates differ.
ImpactRecord impact(const DispatchResult& baseline, const DispatchResult& counterfactual);

struct StrategyTotals {
  std::string strategy;
  int days = 0;
  double co2_saved = 0.0;         // tCO2
  double cost_saved = 0.0;
  double payment_saved = 0.0;
  double avg_price_change = 0.0;  // demand-weighted mean of daily changes

  double co2_saved_kt() const { return co2_saved / 1000.0; }
};

/// Per-strategy totals sorted by strategy name; daily values are summed in
/// date order whatever the input order.
std::vector<StrategyTotals> yearly_summary(const std::vector<ImpactRecord>& records);

std::string impact_csv(const std::vector<ImpactRecord>& records);
std::vector<ImpactRecord> parse_impact_csv(std::string_view text, const std::string& file_name);

/// Hourly GND with the flexible load and available renewables.
HourlyVector dispatch_gnd(const DispatchResult& dispatch);

struct PeakDelta {
  std::array<double, kTechnologyCount> mw{};  // baseline - counterfactual, mean over the hours
  int hours = 0;
  bool truncated = false;  // fewer hours available than requested
};

/// Top-n baseline GND hours of the year (ties by day then hour) and the mean
/// per-technology generation change there.  Runs must cover the same days.
PeakDelta peak_hours_delta(const GridCase& grid, const std::vector<DispatchResult>& baseline,
                           const std::vector<DispatchResult>& counterfactual, int n_hours = 100);

/// Yearly max GND of the baseline minus that of the counterfactual, MW.
double peak_gnd_reduction(const std::vector<DispatchResult>& baseline,
                          const std::vector<DispatchResult>& counterfactual);

/// Day bins by min(LMP): (-inf,0), [0,5), [5,10), [10,15), [15,20), [20,inf).
inline constexpr int kMinLmpBins = 6;
int min_lmp_bin(double min_lmp);
std::string_view min_lmp_bin_label(int bin);

struct AttributionRow {
  std::string date;
  int hour = 0;
  double demand_increase = 0.0;  // MW vs the previous hour
  std::array<double, kTechnologyCount> share{};
  double curtailment = 0.0;      // MWh in the hour
  double min_lmp = 0.0;
  Regime regime = Regime::low_gnd;
  int bin = 0;

  /// Wind, solar and gas shares.
  double non_coal_share() const;
  double coal_share() const;
};

/// Hour-to-hour increases within each day (hours 1-23).  Shares are the
/// positive per-technology output changes over their sum.
std::vector<AttributionRow> attribute_demand_increases(const GridCase& grid,
                                                       const std::vector<DispatchResult>& days,
                                                       const std::vector<double>& min_lmp,
                                                       const std::vector<Regime>& regimes);

struct AttributionBin {
  std::optional<Regime> regime;  // empty: both regimes
  int bin = 0;
  int events = 0;
  std::array<double, kTechnologyCount> share_sum{};
  double non_coal = 0.0;
  double coal = 0.0;

  /// Non-coal to coal contribution ratio; infinite without coal.
  double ratio() const;
};

/// Per (regime, bin) and per bin over both regimes.
std::vector<AttributionBin> summarize_attribution(const std::vector<AttributionRow>& rows);

/// Non-coal:coal ratio over the rows whose day min(LMP) is in [lo, hi).
double attribution_ratio(const std::vector<AttributionRow>& rows, double lo, double hi);

struct MarginalTable {
  std::array<std::array<int, kTechnologyCount>, kMinLmpBins> counts{};
  std::array<int, kMinLmpBins> indeterminate{};
  std::array<int, kMinLmpBins> hours{};

  /// Share of hours in the bins whose marginal unit is wind or solar.
  double renewable_share(int first_bin, int last_bin) const;
};

/// Marginal technology at the bus each hour, binned by the day's min(LMP).
MarginalTable marginal_tech_by_minlmp(const GridCase& grid, const std::vector<DispatchResult>& days,
                                      const std::string& bus, const std::vector<double>& min_lmp,
                                      double price_tol = 1e-6);

}  // namespace gridshift

#endif  // GRIDSHIFT_ANALYSIS_HPP
