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

#include "gridshift/reports.hpp"

#include <map>

#include "gridshift/format.hpp"

namespace gridshift {

namespace {

std::string tech_header() {
  std::string out;
  for (Technology t : kAllTechnologies) out += ',' + std::string(to_string(t));
  return out;
}

}  // namespace

std::string summary_csv(const std::vector<StrategyTotals>& totals) {
  std::string out = "strategy,days,co2_saved_kt,cost_saved,payment_saved,avg_price_change\n";
  for (const auto& t : totals) {
    out += t.strategy + ',' + std::to_string(t.days) + ',' + format_double(t.co2_saved_kt()) + ',' +
           format_double(t.cost_saved) + ',' + format_double(t.payment_saved) + ',' +
           format_double(t.avg_price_change) + '\n';
  }
  return out;
}

std::string regime_summary_csv(const std::vector<ImpactRecord>& records) {
  std::string out = "regime,strategy,days,co2_saved_kt,avg_price_change\n";
  for (Regime r : {Regime::low_gnd, Regime::high_gnd}) {
    std::vector<ImpactRecord> part;
    for (const auto& rec : records) {
      if (rec.regime == r) part.push_back(rec);
    }
    for (const auto& t : yearly_summary(part)) {
      out += std::string(to_string(r)) + ',' + t.strategy + ',' + std::to_string(t.days) + ',' +
             format_double(t.co2_saved_kt()) + ',' + format_double(t.avg_price_change) + '\n';
    }
  }
  return out;
}

std::string marginal_csv(const MarginalTable& table) {
  std::string out = "bin,hours,indeterminate" + tech_header() + '\n';
  for (int b = 0; b < kMinLmpBins; ++b) {
    out += std::string(min_lmp_bin_label(b)) + ',' + std::to_string(table.hours[b]) + ',' +
           std::to_string(table.indeterminate[b]);
    for (int c : table.counts[b]) out += ',' + std::to_string(c);
    out += '\n';
  }
  return out;
}

std::string attribution_csv(const std::vector<AttributionBin>& bins) {
  std::string out = "regime,bin,events,non_coal,coal,ratio" + tech_header() + '\n';
  for (const auto& b : bins) {
    out += (b.regime ? std::string(to_string(*b.regime)) : "all") + ',' + std::string(min_lmp_bin_label(b.bin)) +
           ',' + std::to_string(b.events) + ',' + format_double(b.non_coal) + ',' + format_double(b.coal) + ',' +
           format_double(b.ratio());
    for (double s : b.share_sum) out += ',' + format_double(b.events > 0 ? s / b.events : 0.0);
    out += '\n';
  }
  return out;
}

std::string thresholds_csv(const std::array<DerivedThreshold, 2>& thresholds) {
  std::string out = "regime,threshold,separation,z,diagnostic\n";
  for (const auto& t : thresholds) {
    out += std::string(to_string(t.regime)) + ',' + to_string(t.threshold) + ',' + format_double(t.separation) +
           ',' + format_double(t.z) + ',' + t.diagnostic + '\n';
  }
  return out;
}

std::string YearAnalysis::peak_csv() const {
  std::string out = "strategy,hours,truncated,peak_gnd_reduction" + tech_header() + '\n';
  for (std::size_t i = 0; i < peak.size(); ++i) {
    const PeakDelta& p = peak[i].second;
    out += std::string(to_string(peak[i].first)) + ',' + std::to_string(p.hours) + ',' +
           (p.truncated ? "1" : "0") + ',' + format_double(peak_gnd[i].second);
    for (double v : p.mw) out += ',' + format_double(v);
    out += '\n';
  }
  return out;
}

YearAnalysis analyze_year(const GridCase& grid, const YearRun& run, std::size_t node) {
  if (node >= run.flex.size()) throw ConfigError("analysis node out of range");
  std::vector<DispatchResult> base;
  std::vector<double> min_lmp;
  std::vector<Regime> regimes;
  std::vector<HistoryDay> history;
  std::map<StrategyId, std::vector<DispatchResult>> runs;
  for (const auto& d : run.days) {
    if (!d.error.empty()) continue;
    base.push_back(d.baseline);
    min_lmp.push_back(d.features.min_lmp[node]);
    regimes.push_back(d.regime);
    history.push_back({d.date, d.regime, min_lmp.back(), d.baseline.curtailment.sum()});
    for (const auto& [s, r] : d.runs) runs[s].push_back(r);
  }
  YearAnalysis out;
  out.marginal = marginal_tech_by_minlmp(grid, base, run.flex[node].bus, min_lmp);
  out.attribution = attribute_demand_increases(grid, base, min_lmp, regimes);
  out.thresholds = derive_thresholds_from_history(out.attribution, history);
  for (const auto& [s, r] : runs) {
    if (r.size() != base.size()) continue;
    out.peak.emplace_back(s, peak_hours_delta(grid, base, r));
    out.peak_gnd.emplace_back(s, peak_gnd_reduction(base, r));
  }
  return out;
}

}  // namespace gridshift
