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

#include "gridshift/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "gridshift/format.hpp"

namespace gridshift {

namespace {

std::string hours_row(const auto& row) {
  std::string out;
  for (int h = 0; h < kHoursPerDay; ++h) {
    out += ',';
    out += format_double(row[h]);
  }
  return out;
}

std::string hour_header() {
  std::string out;
  for (int h = 0; h < kHoursPerDay; ++h) out += ",h" + std::to_string(h);
  return out;
}

/// Runs kept for export: the baseline as "flat", then the strategies.
template <typename Fn>
void for_each_run(const YearRun& run, Fn&& fn) {
  for (const auto& d : run.days) {
    if (!d.error.empty()) continue;
    fn(d, std::string_view("flat"), d.baseline);
    for (const auto& [s, r] : d.runs) fn(d, to_string(s), r);
  }
}

template <typename RowFn>
std::string table_csv(const YearRun& run, const std::string& entity_header, RowFn&& rows) {
  std::string out = "date,run," + entity_header + hour_header() + "\n";
  for_each_run(run, [&](const DayRun& d, std::string_view name, const DispatchResult& r) { rows(out, d, name, r); });
  return out;
}

[[noreturn]] void rethrow_with(const std::string& context) {
  try {
    throw;
  } catch (const InfeasibleError& e) {
    throw InfeasibleError(context + e.what(), e.hour());
  } catch (const NumericalError& e) {
    throw NumericalError(context + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(context + e.what());
  } catch (const StructuralError& e) {
    throw StructuralError(context + e.what());
  }
}

class DayWorker {
 public:
  DayWorker(const ScenarioBundle& bundle, const std::vector<FlexLoadSpec>& flex, const RunOptions& options)
      : bundle_(bundle), grid_(bundle.grid), flex_(flex), options_(options) {}

  DayRun run(std::size_t index, Regime regime) const {
    std::string stage = "baseline";
    try {
      return run_day(bundle_.days[index], regime, stage);
    } catch (...) {
      rethrow_with("day " + bundle_.days[index].date + " (" + stage + "): ");
    }
  }

 private:
  DayRun run_day(const DayScenario& day, Regime regime, std::string& stage) const {
    DayRun out;
    out.date = day.date;
    out.regime = regime;
    out.baseline = solve_day(grid_, day, LoadShape::flat(flex_), options_.dispatch);
    out.features = day_features(grid_, day, out.baseline, nodes());
    stage = "signals";
    const SignalSet signals = build_signals(day, out.baseline);

    if (options_.policy) {
      const CherryPickPolicy& p = *options_.policy;
      const int b = grid_.bus_index(p.bus);
      double flex_energy = 0.0;
      for (const auto& f : flex_) {
        if (f.bus == p.bus) flex_energy = 24.0 * f.base;
      }
      out.availability.renewables_present =
          renewables_present(zonal_renewables(grid_, day, grid_.buses[b].zone).values.sum(), flex_energy);
      out.availability.wme_available = signals.resolve(SignalId::wme, grid_, p.bus) != nullptr;
    }

    std::vector<StrategyId> todo = options_.strategies;
    if (options_.policy) {
      const double min_lmp = out.baseline.lmp.row(grid_.bus_index(options_.policy->bus)).minCoeff();
      out.policy_choice = pick_strategy(*options_.policy, regime, min_lmp, out.availability);
      if (std::find(todo.begin(), todo.end(), *out.policy_choice) == todo.end()) todo.push_back(*out.policy_choice);
    }

    std::map<StrategyId, ImpactRecord> by_strategy;
    for (StrategyId s : todo) {
      stage = "strategy " + std::string(to_string(s));
      DispatchResult result;
      if (s == StrategyId::base) {
        out.plans.push_back({s, LoadShape::flat(flex_), {}});
        result = out.baseline;
      } else {
        std::optional<DispatchResult> bench;
        const BenchmarkFn benchmark = [&](std::span<const FlexLoadSpec> specs) {
          BenchmarkConfig cfg;
          cfg.co2_penalty_sweep = options_.co2_penalty_sweep;
          cfg.flex.assign(specs.begin(), specs.end());
          BenchmarkResult r = co_optimize_benchmark(grid_, day, cfg, options_.dispatch);
          bench = std::move(r.dispatch);
          return r.shape;
        };
        out.plans.push_back(plan_day(s, signals, grid_, flex_, benchmark));
        result = bench ? std::move(*bench) : solve_day(grid_, day, out.plans.back().shape, options_.dispatch);
      }
      ImpactRecord rec = impact(out.baseline, result);
      rec.strategy = std::string(to_string(s));
      rec.regime = regime;
      rec.min_lmp = out.features.min_lmp;
      out.emissions.emplace_back(s, result.emissions);
      by_strategy.emplace(s, rec);
      const bool requested =
          std::find(options_.strategies.begin(), options_.strategies.end(), s) != options_.strategies.end();
      if (requested) out.records.push_back(rec);
      if (options_.keep_dispatch && s != StrategyId::base) out.runs.emplace(s, std::move(result));
    }
    if (options_.policy) {
      ImpactRecord rec = by_strategy.at(*out.policy_choice);
      rec.strategy = std::string(kPolicyLabel);
      out.records.push_back(rec);
    }
    return out;
  }

  std::vector<std::string> nodes() const {
    std::vector<std::string> out;
    for (const auto& f : flex_) out.push_back(f.bus);
    return out;
  }

  bool wants(StrategyId s) const {
    if (std::find(options_.strategies.begin(), options_.strategies.end(), s) != options_.strategies.end()) return true;
    if (!options_.policy) return false;
    for (const RegimeRule* r : {&options_.policy->low, &options_.policy->high}) {
      for (const Branch* b : {&r->below, &r->at_or_above}) {
        if (b->strategy == s || b->if_no_renewables == s) return true;
      }
    }
    return false;
  }

  SignalSet build_signals(const DayScenario& day, const DispatchResult& baseline) const {
    SignalSet set;
    if (wants(StrategyId::avg)) set.add(avg_carbon_intensity(grid_, baseline));
    set.add(zonal_renewables(grid_, day));
    std::vector<std::string> zones;
    for (const auto& f : flex_) {
      set.add(lmp_signal(grid_, baseline, f.bus));
      if (wants(StrategyId::lme)) set.add(lme_signal(grid_, day, baseline, f.bus, 1.0, options_.dispatch));
      const std::string& zone = grid_.buses[grid_.bus_index(f.bus)].zone;
      if (std::find(zones.begin(), zones.end(), zone) == zones.end()) {
        zones.push_back(zone);
        set.add(zonal_renewables(grid_, day, zone));
      }
    }
    for (const auto& s : bundle_.signals.day(day.date)) set.add(s);
    return set;
  }

  const ScenarioBundle& bundle_;
  const GridCase& grid_;
  const std::vector<FlexLoadSpec>& flex_;
  const RunOptions& options_;
};

}  // namespace

std::vector<ImpactRecord> YearRun::records() const {
  std::vector<ImpactRecord> out;
  for (const auto& d : days) out.insert(out.end(), d.records.begin(), d.records.end());
  return out;
}

int YearRun::failed_days() const {
  return static_cast<int>(std::count_if(days.begin(), days.end(), [](const DayRun& d) { return !d.error.empty(); }));
}

std::vector<FlexLoadSpec> select_flex(const ScenarioBundle& bundle, const std::vector<std::string>& nodes) {
  if (nodes.empty()) {
    if (bundle.flex.empty()) throw ConfigError("bundle declares no flexible loads");
    return {bundle.flex.front()};
  }
  if (nodes.size() > 2) throw ConfigError("at most two flexible nodes are supported");
  std::vector<FlexLoadSpec> out;
  for (const auto& n : nodes) {
    if (bundle.grid.bus_index(n) < 0) throw ConfigError("unknown flexible bus '" + n + "'");
    const auto it = std::find_if(bundle.flex.begin(), bundle.flex.end(), [&](const FlexLoadSpec& f) { return f.bus == n; });
    out.push_back(it != bundle.flex.end() ? *it : FlexLoadSpec{n});
  }
  if (out.size() == 2 && out[0].bus == out[1].bus) throw ConfigError("flexible nodes must differ");
  return out;
}

std::vector<HourlyVector> scenario_gnd(const ScenarioBundle& bundle, const std::vector<FlexLoadSpec>& flex) {
  double base = 0.0;
  for (const auto& f : flex) base += f.base;
  std::vector<HourlyVector> out;
  for (const auto& d : bundle.days) {
    HourlyVector g = grid_net_demand(bundle.grid, d).values;
    g.array() += base;
    out.push_back(g);
  }
  return out;
}

RegimeFit classify_days(const std::vector<HourlyVector>& gnd, const RegimeOptions& options) {
  if (gnd.size() >= 4) return fit_gnd_regimes(gnd, options);
  RegimeFit fit;
  fit.model.degenerate = true;
  fit.clusters.assign(gnd.size(), 0);
  fit.labels.assign(gnd.size(), Regime::low_gnd);
  return fit;
}

YearRun run_year(const ScenarioBundle& bundle, const RunOptions& options) {
  YearRun run;
  run.flex = select_flex(bundle, options.nodes);
  if (options.policy) {
    const auto& bus = options.policy->bus;
    if (std::none_of(run.flex.begin(), run.flex.end(), [&](const FlexLoadSpec& f) { return f.bus == bus; })) {
      throw ConfigError("policy bus " + bus + " is not a selected flexible node");
    }
  }
  for (StrategyId s : options.strategies) {
    if ((s == StrategyId::wme || s == StrategyId::cfeg) && bundle.signals.empty()) {
      throw ConfigError("strategy " + std::string(to_string(s)) + " needs external signals in the bundle");
    }
  }
  run.gnd = scenario_gnd(bundle, run.flex);
  run.regimes = classify_days(run.gnd, options.regimes);

  std::size_t first = 0, last = bundle.days.size();
  if (options.days) {
    first = std::min(options.days->first, bundle.days.size());
    last = std::min(options.days->second, bundle.days.size());
  }
  const std::size_t count = last > first ? last - first : 0;
  run.days.resize(count);
  std::vector<std::exception_ptr> errors(count);
  const DayWorker worker(bundle, run.flex, options);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i = next++; i < count; i = next++) {
      const std::size_t d = first + i;
      try {
        run.days[i] = worker.run(d, run.regimes.labels[d]);
      } catch (const std::exception& e) {
        errors[i] = std::current_exception();
        run.days[i] = DayRun{};
        run.days[i].date = bundle.days[d].date;
        run.days[i].regime = run.regimes.labels[d];
        run.days[i].error = e.what();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(std::max<std::size_t>(count, 1))));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (!options.keep_going) {
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  return run;
}

std::string shapes_csv(const YearRun& run) {
  std::string out = "date,strategy,node,hour,mw\n";
  for (const auto& d : run.days) {
    for (const auto& p : d.plans) {
      for (const auto& n : p.shape.nodes()) {
        for (int h = 0; h < kHoursPerDay; ++h) {
          out += d.date + ',' + std::string(to_string(p.strategy)) + ',' + n.bus + ',' + std::to_string(h) + ',' +
                 std::to_string(n.mw[h]) + '\n';
        }
      }
    }
  }
  return out;
}

std::string features_csv(const YearRun& run) {
  std::string out = "date";
  const DayRun* first = nullptr;
  for (const auto& d : run.days) {
    if (d.error.empty()) {
      first = &d;
      break;
    }
  }
  if (first == nullptr) return out + "\n";
  for (const auto& n : first->features.names()) out += ',' + n;
  out += '\n';
  for (const auto& d : run.days) {
    if (!d.error.empty()) continue;
    out += d.date;
    for (double v : d.features.values()) out += ',' + format_double(v);
    out += '\n';
  }
  return out;
}

std::string days_csv(const YearRun& run) {
  std::string out = "date,regime,gnd_total";
  for (const auto& f : run.flex) out += ",min_lmp@" + f.bus;
  out += ",renewables_present,wme_available,policy_choice,error\n";
  for (std::size_t i = 0; i < run.days.size(); ++i) {
    const DayRun& d = run.days[i];
    out += d.date + ',' + std::string(to_string(d.regime)) + ',';
    out += d.error.empty() ? format_double(d.features.gnd_total) : "";
    for (std::size_t n = 0; n < run.flex.size(); ++n) {
      out += ',';
      if (d.error.empty()) out += format_double(d.features.min_lmp[n]);
    }
    std::string err = d.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out += std::string(",") + (d.availability.renewables_present ? "1" : "0") + ',' +
           (d.availability.wme_available ? "1" : "0") + ',' +
           (d.policy_choice ? std::string(to_string(*d.policy_choice)) : "") + ',' + err + '\n';
  }
  return out;
}

std::string dispatch_generation_csv(const GridCase& grid, const YearRun& run) {
  return table_csv(run, "generator", [&](std::string& out, const DayRun& d, std::string_view name, const DispatchResult& r) {
    for (std::size_t g = 0; g < grid.generators.size(); ++g) {
      out += d.date + ',' + std::string(name) + ',' + grid.generators[g].id + hours_row(r.generation.row(g)) + '\n';
    }
  });
}

std::string dispatch_emissions_csv(const YearRun& run) {
  std::string out = "date,run" + hour_header() + ",total\n";
  for_each_run(run, [&](const DayRun& d, std::string_view name, const DispatchResult& r) {
    out += d.date + ',' + std::string(name) + hours_row(r.hourly_emissions) + ',' + format_double(r.emissions) + '\n';
  });
  return out;
}

std::string dispatch_lmp_csv(const GridCase& grid, const YearRun& run) {
  return table_csv(run, "bus", [&](std::string& out, const DayRun& d, std::string_view name, const DispatchResult& r) {
    for (std::size_t b = 0; b < grid.buses.size(); ++b) {
      out += d.date + ',' + std::string(name) + ',' + grid.buses[b].id + hours_row(r.lmp.row(b)) + '\n';
    }
  });
}

std::string dispatch_flow_csv(const GridCase& grid, const YearRun& run) {
  return table_csv(run, "line", [&](std::string& out, const DayRun& d, std::string_view name, const DispatchResult& r) {
    for (std::size_t l = 0; l < grid.lines.size(); ++l) {
      out += d.date + ',' + std::string(name) + ',' + grid.lines[l].id + hours_row(r.flow.row(l)) + '\n';
    }
  });
}

}  // namespace gridshift
