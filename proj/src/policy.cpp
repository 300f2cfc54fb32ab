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

#include "gridshift/policy.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gridshift/format.hpp"

namespace gridshift {

namespace {

using nlohmann::json;

bool below(const Threshold& t, double min_lmp) { return !t || min_lmp < *t; }

bool threshold_less(const Threshold& a, const Threshold& b) {
  if (!a || !b) return a.has_value() && !b.has_value();
  return *a < *b;
}

std::vector<Threshold> sorted_grid(std::vector<Threshold> grid) {
  if (grid.empty()) throw ConfigError("threshold grid is empty");
  for (const auto& t : grid) {
    if (t && !std::isfinite(*t)) throw ConfigError("thresholds must be finite or unbounded");
  }
  std::stable_sort(grid.begin(), grid.end(), threshold_less);
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<StrategyId> sorted_candidates(std::vector<StrategyId> c) {
  if (c.empty()) throw ConfigError("no candidate strategies");
  std::sort(c.begin(), c.end(), [](StrategyId a, StrategyId b) { return to_string(a) < to_string(b); });
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

/// Dense view of the tuning data: savings[day][candidate].
struct Table {
  std::vector<StrategyId> candidates;
  std::vector<Threshold> grid;
  std::vector<Regime> regime;
  std::vector<double> min_lmp;
  std::vector<std::vector<double>> saved;

  Table(const std::vector<PolicyDay>& days, const std::vector<StrategyId>& cands, const std::vector<Threshold>& g)
      : candidates(sorted_candidates(cands)), grid(sorted_grid(g)) {
    for (const auto& d : days) {
      regime.push_back(d.regime);
      min_lmp.push_back(d.min_lmp);
      std::vector<double> row;
      for (StrategyId s : candidates) {
        const auto it = d.saved.find(s);
        if (it == d.saved.end()) {
          throw ConfigError("day " + d.date + " has no savings for strategy " + std::string(to_string(s)));
        }
        row.push_back(it->second);
      }
      saved.push_back(std::move(row));
    }
  }

  std::size_t index_of(StrategyId s) const {
    return static_cast<std::size_t>(std::find(candidates.begin(), candidates.end(), s) - candidates.begin());
  }

  /// Best rule for one regime, skipping one day when skip is in range.
  RegimeChoice tune(Regime r, std::size_t skip) const {
    const std::size_t k = candidates.size();
    std::vector<double> lo(k), hi(k);
    RegimeChoice best;
    bool have = false;
    for (const Threshold& t : grid) {
      std::fill(lo.begin(), lo.end(), 0.0);
      std::fill(hi.begin(), hi.end(), 0.0);
      int count = 0;
      for (std::size_t d = 0; d < saved.size(); ++d) {
        if (d == skip || regime[d] != r) continue;
        ++count;
        auto& acc = below(t, min_lmp[d]) ? lo : hi;
        for (std::size_t s = 0; s < k; ++s) acc[s] += saved[d][s];
      }
      const auto arg_lo = static_cast<std::size_t>(std::max_element(lo.begin(), lo.end(), std::less<>{}) - lo.begin());
      const auto arg_hi = static_cast<std::size_t>(std::max_element(hi.begin(), hi.end(), std::less<>{}) - hi.begin());
      const double total = lo[arg_lo] + hi[arg_hi];
      if (!have || total > best.saved) {
        best = RegimeChoice{t, candidates[arg_lo], candidates[arg_hi], total, count};
        have = true;
      }
    }
    return best;
  }

  /// Savings of a fixed rule over one regime, summed like tune().
  double evaluate(Regime r, const Threshold& t, StrategyId lo_s, StrategyId hi_s) const {
    const std::size_t a = index_of(lo_s), b = index_of(hi_s);
    double lo = 0.0, hi = 0.0;
    for (std::size_t d = 0; d < saved.size(); ++d) {
      if (regime[d] != r) continue;
      if (below(t, min_lmp[d])) {
        lo += saved[d][a];
      } else {
        hi += saved[d][b];
      }
    }
    return lo + hi;
  }
};

json branch_json(const Branch& b) {
  json j;
  j["strategy"] = std::string(to_string(b.strategy));
  j["if_no_renewables"] = b.if_no_renewables ? json(std::string(to_string(*b.if_no_renewables))) : json(nullptr);
  return j;
}

Branch branch_from(const json& j) {
  Branch b;
  b.strategy = strategy_from_string(j.at("strategy").get<std::string>());
  if (j.contains("if_no_renewables") && !j.at("if_no_renewables").is_null()) {
    b.if_no_renewables = strategy_from_string(j.at("if_no_renewables").get<std::string>());
  }
  return b;
}

json rule_json(const RegimeRule& r) {
  json j;
  j["threshold"] = r.threshold ? json(*r.threshold) : json(nullptr);
  j["below"] = branch_json(r.below);
  j["at_or_above"] = branch_json(r.at_or_above);
  return j;
}

RegimeRule rule_from(const json& j) {
  RegimeRule r;
  const json& t = j.at("threshold");
  if (!t.is_null()) r.threshold = t.get<double>();
  r.below = branch_from(j.at("below"));
  r.at_or_above = branch_from(j.at("at_or_above"));
  return r;
}

}  // namespace

std::string to_string(const Threshold& t) { return t ? format_double(*t) : "unbounded"; }

bool renewables_present(double zonal_available_mwh, double flex_daily_mwh) {
  return zonal_available_mwh >= 0.01 * flex_daily_mwh;
}

CherryPickPolicy CherryPickPolicy::tesla(std::string bus) {
  CherryPickPolicy p;
  p.name = "tesla";
  p.bus = std::move(bus);
  p.low = {10.0, {StrategyId::lmp, std::nullopt}, {StrategyId::zws, StrategyId::lmp}};
  p.high = {2.0, {StrategyId::lmp, StrategyId::base}, {StrategyId::wme, std::nullopt}};
  return p;
}

CherryPickPolicy CherryPickPolicy::tylergnd(std::string bus) {
  CherryPickPolicy p;
  p.name = "tylergnd";
  p.bus = std::move(bus);
  p.low = {std::nullopt, {StrategyId::lmp, std::nullopt}, {StrategyId::zws, StrategyId::lmp}};
  p.high = {18.0, {StrategyId::lmp, StrategyId::base}, {StrategyId::wme, std::nullopt}};
  return p;
}

std::string CherryPickPolicy::to_json() const {
  json j;
  j["format_version"] = 1;
  j["name"] = name;
  j["bus"] = bus;
  j["wme_fallback"] = std::string(to_string(wme_fallback));
  j["regimes"]["low_gnd"] = rule_json(low);
  j["regimes"]["high_gnd"] = rule_json(high);
  return j.dump(2) + "\n";
}

CherryPickPolicy CherryPickPolicy::from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    if (j.at("format_version").get<int>() != 1) throw ConfigError("unsupported policy format_version");
    CherryPickPolicy p;
    p.name = j.at("name").get<std::string>();
    p.bus = j.at("bus").get<std::string>();
    p.wme_fallback = strategy_from_string(j.at("wme_fallback").get<std::string>());
    p.low = rule_from(j.at("regimes").at("low_gnd"));
    p.high = rule_from(j.at("regimes").at("high_gnd"));
    return p;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("policy file: ") + e.what());
  }
}

StrategyId pick_strategy(const CherryPickPolicy& policy, Regime regime, double min_lmp,
                         const Availability& availability) {
  const RegimeRule& rule = policy.rule(regime);
  const Branch& branch = below(rule.threshold, min_lmp) ? rule.below : rule.at_or_above;
  StrategyId s = branch.strategy;
  if (!availability.renewables_present && branch.if_no_renewables) s = *branch.if_no_renewables;
  if (s == StrategyId::wme && !availability.wme_available) s = policy.wme_fallback;
  return s;
}

std::vector<PolicyDay> policy_days(const std::vector<ImpactRecord>& records,
                                   const std::vector<StrategyId>& candidates, std::size_t node) {
  std::map<std::string, PolicyDay> by_date;
  for (const auto& r : records) {
    StrategyId s;
    try {
      s = strategy_from_string(r.strategy);
    } catch (const ConfigError&) {
      continue;
    }
    if (node >= r.min_lmp.size()) throw ConfigError("record " + r.date + " has no min(LMP) for node " + std::to_string(node));
    PolicyDay& d = by_date[r.date];
    d.date = r.date;
    d.regime = r.regime;
    d.min_lmp = r.min_lmp[node];
    d.saved[s] = r.co2_saved;
  }
  std::vector<PolicyDay> out;
  for (auto& [date, d] : by_date) {
    for (StrategyId s : candidates) {
      if (!d.saved.contains(s)) throw ConfigError("day " + date + " lacks strategy " + std::string(to_string(s)));
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Threshold> default_threshold_grid() {
  std::vector<Threshold> g;
  for (int t = -5; t <= 25; ++t) g.emplace_back(static_cast<double>(t));
  g.emplace_back(std::nullopt);
  return g;
}

CherryPickPolicy TuneResult::policy(std::string name, std::string bus) const {
  CherryPickPolicy p;
  p.name = std::move(name);
  p.bus = std::move(bus);
  p.low = {low.threshold, {low.below, std::nullopt}, {low.at_or_above, std::nullopt}};
  p.high = {high.threshold, {high.below, std::nullopt}, {high.at_or_above, std::nullopt}};
  return p;
}

TuneResult tune_thresholds(const std::vector<PolicyDay>& days, const std::vector<StrategyId>& candidates,
                           const std::vector<Threshold>& grid) {
  const Table table(days, candidates, grid);
  TuneResult r;
  const std::size_t none = std::numeric_limits<std::size_t>::max();
  r.low = table.tune(Regime::low_gnd, none);
  r.high = table.tune(Regime::high_gnd, none);
  r.total = r.low.saved + r.high.saved;
  for (StrategyId s : table.candidates) {
    r.single_strategy.emplace_back(s, table.evaluate(Regime::low_gnd, std::nullopt, s, s) +
                                          table.evaluate(Regime::high_gnd, std::nullopt, s, s));
  }
  return r;
}

LoocvResult loocv(const std::vector<PolicyDay>& days, const std::vector<StrategyId>& candidates,
                  const std::vector<Threshold>& grid) {
  const Table table(days, candidates, grid);
  LoocvResult out;
  for (std::size_t d = 0; d < days.size(); ++d) {
    const RegimeChoice c = table.tune(days[d].regime, d);
    const StrategyId s = below(c.threshold, days[d].min_lmp) ? c.below : c.at_or_above;
    const double saved = table.saved[d][table.index_of(s)];
    out.selections.push_back({days[d].date, c.threshold, s, saved});
    out.total += saved;
  }
  return out;
}

SensitivityResult sensitivity(const std::vector<PolicyDay>& days, const TuneResult& tuned,
                              const std::vector<double>& low_thresholds,
                              const std::vector<double>& high_thresholds) {
  std::vector<StrategyId> used = {tuned.low.below, tuned.low.at_or_above, tuned.high.below, tuned.high.at_or_above};
  const Table table(days, used, {std::nullopt});
  SensitivityResult out;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double a : low_thresholds) {
    for (double b : high_thresholds) {
      const double s = table.evaluate(Regime::low_gnd, a, tuned.low.below, tuned.low.at_or_above) +
                       table.evaluate(Regime::high_gnd, b, tuned.high.below, tuned.high.at_or_above);
      out.cells.push_back({a, b, s});
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
  }
  out.spread = out.cells.empty() || hi == 0.0 ? 0.0 : (hi - lo) / std::abs(hi);
  return out;
}

TuneReport run_tuning(const std::vector<PolicyDay>& days, const std::vector<StrategyId>& candidates,
                      const std::vector<Threshold>& grid) {
  TuneReport r;
  r.in_sample = tune_thresholds(days, candidates, grid);
  r.loocv = loocv(days, candidates, grid);
  std::vector<double> low, high;
  for (int t = -3; t <= 5; ++t) low.push_back(t);
  for (int t = 8; t <= 13; ++t) high.push_back(t);
  r.sensitivity = sensitivity(days, r.in_sample, low, high);
  return r;
}

std::string TuneReport::csv() const {
  std::string out = "section,key,threshold,below,at_or_above,saved_t\n";
  auto choice = [&](const char* key, const RegimeChoice& c) {
    out += std::string("regime,") + key + ',' + to_string(c.threshold) + ',' + std::string(to_string(c.below)) + ',' +
           std::string(to_string(c.at_or_above)) + ',' + format_double(c.saved) + '\n';
  };
  choice("low_gnd", in_sample.low);
  choice("high_gnd", in_sample.high);
  out += "total,in_sample,,,," + format_double(in_sample.total) + '\n';
  out += "total,loocv,,,," + format_double(loocv.total) + '\n';
  for (const auto& [s, v] : in_sample.single_strategy) {
    out += "single," + std::string(to_string(s)) + ",,,," + format_double(v) + '\n';
  }
  for (const auto& sel : loocv.selections) {
    out += "loocv," + sel.date + ',' + to_string(sel.threshold) + ',' + std::string(to_string(sel.strategy)) + ",," +
           format_double(sel.saved) + '\n';
  }
  for (const auto& c : sensitivity.cells) {
    out += "sensitivity,," + format_double(c.low_threshold) + ',' + format_double(c.high_threshold) + ",," +
           format_double(c.saved) + '\n';
  }
  out += "sensitivity_spread,,,,," + format_double(sensitivity.spread) + '\n';
  return out;
}

std::string TuneReport::summary() const {
  std::ostringstream s;
  auto line = [&](const char* name, const RegimeChoice& c) {
    s << name << ": threshold " << to_string(c.threshold) << ", below " << to_string(c.below) << ", at/above "
      << to_string(c.at_or_above) << ", " << format_fixed(c.saved / 1000.0, 3) << " kt over " << c.days << " days\n";
  };
  line("low GND ", in_sample.low);
  line("high GND", in_sample.high);
  s << "cherry-pick in-sample " << format_fixed(in_sample.total / 1000.0, 3) << " kt, LOOCV "
    << format_fixed(loocv.total / 1000.0, 3) << " kt\n";
  for (const auto& [st, v] : in_sample.single_strategy) {
    s << "  " << to_string(st) << " " << format_fixed(v / 1000.0, 3) << " kt\n";
  }
  s << "threshold sensitivity spread " << format_fixed(100.0 * sensitivity.spread, 2) << "%\n";
  return s.str();
}

std::array<DerivedThreshold, 2> derive_thresholds_from_history(const std::vector<AttributionRow>& rows,
                                                               const std::vector<HistoryDay>& days,
                                                               const std::vector<Threshold>& grid,
                                                               const DerivationOptions& options) {
  const std::vector<Threshold> thresholds = sorted_grid(grid);
  std::array<DerivedThreshold, 2> out;
  for (Regime r : {Regime::low_gnd, Regime::high_gnd}) {
    DerivedThreshold& res = out[static_cast<std::size_t>(r)];
    res.regime = r;
    double total_curtailment = 0.0;
    double total_coal = 0.0;
    for (const auto& d : days) {
      if (d.regime == r) total_curtailment += d.curtailment;
    }
    for (const auto& row : rows) {
      if (row.regime == r) total_coal += row.coal_share();
    }
    bool found = false;
    for (const Threshold& t : thresholds) {
      if (!t) continue;
      double xb = 0, nb = 0, xa = 0, na = 0;
      for (const auto& row : rows) {
        if (row.regime != r) continue;
        const double nc = row.non_coal_share();
        const double n = nc + row.coal_share();
        if (row.min_lmp < *t) {
          xb += nc;
          nb += n;
        } else {
          xa += nc;
          na += n;
        }
      }
      if (!(nb > 0.0) || !(na > 0.0)) continue;
      const double pb = xb / nb, pa = xa / na, p = (xb + xa) / (nb + na);
      const double se = std::sqrt(p * (1.0 - p) * (1.0 / nb + 1.0 / na));
      if (!(se > 0.0)) continue;
      const double z = (pb - pa) / se;
      double curtailed_above = 0.0;
      for (const auto& d : days) {
        if (d.regime == r && !(d.min_lmp < *t)) curtailed_above += d.curtailment;
      }
      const double share = total_curtailment > 0.0 ? curtailed_above / total_curtailment : 0.0;
      if (z > options.z_critical && share <= options.max_curtailment_share_above &&
          (!found || pb - pa > res.separation)) {
        res.threshold = t;
        res.separation = pb - pa;
        res.z = z;
        found = true;
      }
    }
    if (!found) {
      res.threshold.reset();
      res.diagnostic = total_coal > 0.0 ? "no threshold gives a significant split with low curtailment above it"
                                        : "no coal contribution to separate";
    }
  }
  return out;
}

}  // namespace gridshift
