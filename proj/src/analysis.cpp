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

#include "gridshift/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "gridshift/csv.hpp"
#include "gridshift/format.hpp"

namespace gridshift {

namespace {

constexpr std::array<std::string_view, kMinLmpBins> kBinLabels = {"<0", "0-5", "5-10", "10-15", "15-20", ">=20"};

bool is_non_coal(Technology t) { return is_intermittent(t) || is_gas(t); }

void check_same_days(const std::vector<DispatchResult>& a, const std::vector<DispatchResult>& b) {
  if (a.size() != b.size()) throw ConfigError("runs cover different numbers of days");
  for (std::size_t d = 0; d < a.size(); ++d) {
    if (a[d].date != b[d].date) throw ConfigError("runs differ at day " + a[d].date + " vs " + b[d].date);
  }
}

}  // namespace

double average_price(const DispatchResult& dispatch) {
  const double demand = dispatch.bus_demand.sum();
  if (demand <= 0.0) return 0.0;
  return dispatch.lmp.cwiseProduct(dispatch.bus_demand).sum() / demand;
}

ImpactRecord impact(const DispatchResult& baseline, const DispatchResult& counterfactual) {
  if (baseline.date != counterfactual.date) {
    throw ConfigError("impact of " + counterfactual.date + " against baseline " + baseline.date);
  }
  ImpactRecord r;
  r.date = baseline.date;
  r.co2_saved = baseline.emissions - counterfactual.emissions;
  r.cost_saved = baseline.cost - counterfactual.cost;
  r.payment_saved = baseline.load_payment - counterfactual.load_payment;
  r.avg_price_change = average_price(counterfactual) - average_price(baseline);
  r.demand = baseline.demand.sum();
  return r;
}

std::vector<StrategyTotals> yearly_summary(const std::vector<ImpactRecord>& records) {
  std::vector<const ImpactRecord*> sorted;
  sorted.reserve(records.size());
  for (const auto& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](const ImpactRecord* a, const ImpactRecord* b) {
    return std::tie(a->strategy, a->date) < std::tie(b->strategy, b->date);
  });
  std::vector<StrategyTotals> out;
  std::vector<double> weight;
  for (const ImpactRecord* r : sorted) {
    if (out.empty() || out.back().strategy != r->strategy) {
      out.push_back(StrategyTotals{r->strategy});
      weight.push_back(0.0);
    }
    StrategyTotals& t = out.back();
    ++t.days;
    t.co2_saved += r->co2_saved;
    t.cost_saved += r->cost_saved;
    t.payment_saved += r->payment_saved;
    t.avg_price_change += r->avg_price_change * r->demand;
    weight.back() += r->demand;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].avg_price_change = weight[i] > 0.0 ? out[i].avg_price_change / weight[i] : 0.0;
  }
  return out;
}

std::string impact_csv(const std::vector<ImpactRecord>& records) {
  std::string out = "date,strategy,regime,co2_saved,cost_saved,payment_saved,avg_price_change,demand,min_lmp\n";
  for (const auto& r : records) {
    std::string mins;
    for (std::size_t i = 0; i < r.min_lmp.size(); ++i) {
      if (i) mins += ';';
      mins += format_double(r.min_lmp[i]);
    }
    out += r.date + ',' + r.strategy + ',' + std::string(to_string(r.regime)) + ',' + format_double(r.co2_saved) +
           ',' + format_double(r.cost_saved) + ',' + format_double(r.payment_saved) + ',' +
           format_double(r.avg_price_change) + ',' + format_double(r.demand) + ',' + mins + '\n';
  }
  return out;
}

std::vector<ImpactRecord> parse_impact_csv(std::string_view text, const std::string& file_name) {
  std::vector<ImpactRecord> out;
  for_each_csv_row(text, file_name,
                   {"date", "strategy", "regime", "co2_saved", "cost_saved", "payment_saved", "avg_price_change",
                    "demand", "min_lmp"},
                   [&](long row, const std::vector<std::string_view>& f) {
                     ImpactRecord r;
                     r.date = std::string(f[0]);
                     r.strategy = std::string(f[1]);
                     try {
                       r.regime = regime_from_string(f[2]);
                     } catch (const ConfigError&) {
                       throw FormatError(file_name, row, "regime", "unknown regime");
                     }
                     r.co2_saved = csv_double(f[3], file_name, row, "co2_saved");
                     r.cost_saved = csv_double(f[4], file_name, row, "cost_saved");
                     r.payment_saved = csv_double(f[5], file_name, row, "payment_saved");
                     r.avg_price_change = csv_double(f[6], file_name, row, "avg_price_change");
                     r.demand = csv_double(f[7], file_name, row, "demand");
                     std::string_view rest = f[8];
                     while (!rest.empty()) {
                       const auto cut = rest.find(';');
                       r.min_lmp.push_back(csv_double(rest.substr(0, cut), file_name, row, "min_lmp"));
                       rest = cut == std::string_view::npos ? std::string_view{} : rest.substr(cut + 1);
                     }
                     out.push_back(std::move(r));
                   });
  return out;
}

HourlyVector dispatch_gnd(const DispatchResult& dispatch) { return dispatch.demand - dispatch.available_renewables; }

PeakDelta peak_hours_delta(const GridCase& grid, const std::vector<DispatchResult>& baseline,
                           const std::vector<DispatchResult>& counterfactual, int n_hours) {
  check_same_days(baseline, counterfactual);
  struct Slot {
    double gnd;
    std::size_t day;
    int hour;
  };
  std::vector<Slot> slots;
  for (std::size_t d = 0; d < baseline.size(); ++d) {
    const HourlyVector g = dispatch_gnd(baseline[d]);
    for (int h = 0; h < kHoursPerDay; ++h) slots.push_back({g[h], d, h});
  }
  std::stable_sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) { return a.gnd > b.gnd; });
  PeakDelta out;
  out.truncated = static_cast<int>(slots.size()) < n_hours;
  out.hours = std::min<int>(n_hours, static_cast<int>(slots.size()));
  for (int i = 0; i < out.hours; ++i) {
    const Slot& s = slots[i];
    for (std::size_t g = 0; g < grid.generators.size(); ++g) {
      const auto t = static_cast<std::size_t>(grid.generators[g].technology);
      out.mw[t] += baseline[s.day].generation(g, s.hour) - counterfactual[s.day].generation(g, s.hour);
    }
  }
  if (out.hours > 0) {
    for (double& v : out.mw) v /= out.hours;
  }
  return out;
}

double peak_gnd_reduction(const std::vector<DispatchResult>& baseline,
                          const std::vector<DispatchResult>& counterfactual) {
  check_same_days(baseline, counterfactual);
  double base = -std::numeric_limits<double>::infinity();
  double cf = base;
  for (std::size_t d = 0; d < baseline.size(); ++d) {
    base = std::max(base, dispatch_gnd(baseline[d]).maxCoeff());
    cf = std::max(cf, dispatch_gnd(counterfactual[d]).maxCoeff());
  }
  return baseline.empty() ? 0.0 : base - cf;
}

int min_lmp_bin(double min_lmp) {
  if (min_lmp < 0.0) return 0;
  if (min_lmp >= 20.0) return kMinLmpBins - 1;
  return 1 + static_cast<int>(std::floor(min_lmp / 5.0));
}

std::string_view min_lmp_bin_label(int bin) { return kBinLabels.at(static_cast<std::size_t>(bin)); }

double AttributionRow::non_coal_share() const {
  double s = 0.0;
  for (Technology t : kAllTechnologies) {
    if (is_non_coal(t)) s += share[static_cast<std::size_t>(t)];
  }
  return s;
}

double AttributionRow::coal_share() const { return share[static_cast<std::size_t>(Technology::coal)]; }

std::vector<AttributionRow> attribute_demand_increases(const GridCase& grid,
                                                       const std::vector<DispatchResult>& days,
                                                       const std::vector<double>& min_lmp,
                                                       const std::vector<Regime>& regimes) {
  if (min_lmp.size() != days.size() || regimes.size() != days.size()) {
    throw StructuralError("attribution needs one min(LMP) and regime per day");
  }
  std::vector<AttributionRow> rows;
  for (std::size_t d = 0; d < days.size(); ++d) {
    const DispatchResult& r = days[d];
    for (int h = 1; h < kHoursPerDay; ++h) {
      const double increase = r.demand[h] - r.demand[h - 1];
      if (!(increase > 0.0)) continue;
      std::array<double, kTechnologyCount> change{};
      for (std::size_t g = 0; g < grid.generators.size(); ++g) {
        change[static_cast<std::size_t>(grid.generators[g].technology)] += r.generation(g, h) - r.generation(g, h - 1);
      }
      double positive = 0.0;
      for (double c : change) positive += std::max(c, 0.0);
      if (!(positive > 0.0)) continue;
      AttributionRow row;
      row.date = r.date;
      row.hour = h;
      row.demand_increase = increase;
      for (std::size_t t = 0; t < kTechnologyCount; ++t) row.share[t] = std::max(change[t], 0.0) / positive;
      row.curtailment = r.curtailment.col(h).sum();
      row.min_lmp = min_lmp[d];
      row.regime = regimes[d];
      row.bin = min_lmp_bin(min_lmp[d]);
      rows.push_back(row);
    }
  }
  return rows;
}

double AttributionBin::ratio() const {
  if (coal > 0.0) return non_coal / coal;
  return non_coal > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

std::vector<AttributionBin> summarize_attribution(const std::vector<AttributionRow>& rows) {
  std::vector<AttributionBin> out;
  for (std::optional<Regime> regime : {std::optional<Regime>(Regime::low_gnd), std::optional<Regime>(Regime::high_gnd),
                                       std::optional<Regime>()}) {
    for (int b = 0; b < kMinLmpBins; ++b) {
      AttributionBin bin{regime, b};
      for (const auto& r : rows) {
        if (r.bin != b || (regime && r.regime != *regime)) continue;
        ++bin.events;
        for (std::size_t t = 0; t < kTechnologyCount; ++t) bin.share_sum[t] += r.share[t];
        bin.non_coal += r.non_coal_share();
        bin.coal += r.coal_share();
      }
      out.push_back(bin);
    }
  }
  return out;
}

double attribution_ratio(const std::vector<AttributionRow>& rows, double lo, double hi) {
  AttributionBin acc;
  for (const auto& r : rows) {
    if (r.min_lmp < lo || !(r.min_lmp < hi)) continue;
    acc.non_coal += r.non_coal_share();
    acc.coal += r.coal_share();
  }
  return acc.ratio();
}

double MarginalTable::renewable_share(int first_bin, int last_bin) const {
  long renewable = 0;
  long total = 0;
  for (int b = first_bin; b <= last_bin; ++b) {
    renewable += counts[b][static_cast<std::size_t>(Technology::wind)] + counts[b][static_cast<std::size_t>(Technology::solar)];
    total += hours[b];
  }
  return total > 0 ? static_cast<double>(renewable) / static_cast<double>(total) : 0.0;
}

MarginalTable marginal_tech_by_minlmp(const GridCase& grid, const std::vector<DispatchResult>& days,
                                      const std::string& bus, const std::vector<double>& min_lmp,
                                      double price_tol) {
  if (min_lmp.size() != days.size()) throw StructuralError("one min(LMP) per day required");
  const int b = grid.bus_index(bus);
  if (b < 0) throw ConfigError("unknown bus '" + bus + "'");
  MarginalTable t;
  for (std::size_t d = 0; d < days.size(); ++d) {
    const int bin = min_lmp_bin(min_lmp[d]);
    for (int h = 0; h < kHoursPerDay; ++h) {
      ++t.hours[bin];
      const int g = marginal_generator(grid, days[d], b, h, price_tol);
      if (g < 0) {
        ++t.indeterminate[bin];
      } else {
        ++t.counts[bin][static_cast<std::size_t>(grid.generators[g].technology)];
      }
    }
  }
  return t;
}

}  // namespace gridshift
