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

#include "gridshift/signals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gridshift/csv.hpp"
#include "gridshift/format.hpp"

namespace gridshift {

namespace {

constexpr std::array<std::string_view, 8> kSignalNames = {"avg_ci", "lmp", "lme", "ws",
                                                          "zws",    "wme", "cfeg", "gnd"};

int bus_or_throw(const GridCase& grid, const std::string& bus) {
  const int b = grid.bus_index(bus);
  if (b < 0) throw ConfigError("unknown bus '" + bus + "'");
  return b;
}

void check_zone(const GridCase& grid, const std::string& zone) {
  if (!zone.empty() && !grid.has_zone(zone)) throw ConfigError("unknown zone '" + zone + "'");
}

bool in_scope(const GridCase& grid, const GeneratorSpec& g, const std::string& zone) {
  return zone.empty() || grid.buses[grid.bus_index(g.bus)].zone == zone;
}

double median_of(HourlyVector v) {
  std::sort(v.data(), v.data() + kHoursPerDay);
  return 0.5 * (v[kHoursPerDay / 2 - 1] + v[kHoursPerDay / 2]);
}

}  // namespace

std::string_view to_string(SignalId id) { return kSignalNames[static_cast<std::size_t>(id)]; }

SignalId signal_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kSignalNames.size(); ++i) {
    if (kSignalNames[i] == name) return kAllSignals[i];
  }
  throw ConfigError("unknown signal '" + std::string(name) + "'");
}

void SignalVector::check() const {
  if (!values.allFinite()) throw StructuralError("signal " + std::string(to_string(name)) + " has non-finite values");
}

void SignalSet::add(SignalVector signal) {
  signal.check();
  for (auto& s : signals_) {
    if (s.name == signal.name && s.scope == signal.scope) {
      s = std::move(signal);
      return;
    }
  }
  signals_.push_back(std::move(signal));
}

const SignalVector* SignalSet::find(SignalId id, std::string_view scope) const {
  for (const auto& s : signals_) {
    if (s.name == id && s.scope == scope) return &s;
  }
  return nullptr;
}

const SignalVector* SignalSet::resolve(SignalId id, const GridCase& grid, std::string_view bus) const {
  if (const auto* s = find(id, bus)) return s;
  const int b = grid.bus_index(bus);
  if (b >= 0) {
    if (const auto* s = find(id, grid.buses[b].zone)) return s;
  }
  return find(id, kSystemScope);
}

SignalVector avg_carbon_intensity(const GridCase& grid, const DispatchResult& dispatch) {
  SignalVector out{SignalId::avg_ci, HourlyVector::Zero(), std::string(kSystemScope)};
  for (int h = 0; h < kHoursPerDay; ++h) {
    double weighted = 0.0;
    double total = 0.0;
    for (Eigen::Index g = 0; g < dispatch.generation.rows(); ++g) {
      const double p = dispatch.generation(g, h);
      weighted += p * grid.carbon[grid.generators[g].technology];
      total += p;
    }
    if (!(total > 0.0)) {
      throw StructuralError("day " + dispatch.date + " hour " + std::to_string(h) + ": no generation, carbon intensity undefined");
    }
    out.values[h] = weighted / total;
  }
  return out;
}

SignalVector zonal_renewables(const GridCase& grid, const DayScenario& scenario, const std::string& zone) {
  check_zone(grid, zone);
  SignalVector out{zone.empty() ? SignalId::ws : SignalId::zws, HourlyVector::Zero(),
                   zone.empty() ? std::string(kSystemScope) : zone};
  for (std::size_t g = 0; g < grid.generators.size(); ++g) {
    const auto& gen = grid.generators[g];
    if (!is_intermittent(gen.technology) || !in_scope(grid, gen, zone)) continue;
    out.values += (scenario.availability.row(static_cast<Eigen::Index>(g)) * gen.p_max).transpose();
  }
  return out;
}

SignalVector zonal_renewables(const GridCase& grid, const DispatchResult& dispatch, const std::string& zone) {
  check_zone(grid, zone);
  SignalVector out{zone.empty() ? SignalId::ws : SignalId::zws, HourlyVector::Zero(),
                   zone.empty() ? std::string(kSystemScope) : zone};
  for (std::size_t g = 0; g < grid.generators.size(); ++g) {
    const auto& gen = grid.generators[g];
    if (!is_intermittent(gen.technology) || !in_scope(grid, gen, zone)) continue;
    out.values += dispatch.generation.row(static_cast<Eigen::Index>(g)).transpose();
  }
  return out;
}

SignalVector grid_net_demand(const GridCase& grid, const DayScenario& scenario) {
  SignalVector out{SignalId::gnd, HourlyVector::Zero(), std::string(kSystemScope)};
  out.values = scenario.bus_demand.colwise().sum().transpose() - zonal_renewables(grid, scenario).values;
  return out;
}

SignalVector grid_net_demand(const GridCase& grid, const DispatchResult& dispatch, bool use_dispatched) {
  SignalVector out{SignalId::gnd, HourlyVector::Zero(), std::string(kSystemScope)};
  out.values = dispatch.demand - (use_dispatched ? dispatch.renewables : dispatch.available_renewables);
  (void)grid;
  return out;
}

SignalVector lme_signal(const GridCase& grid, const DayScenario& scenario, const DispatchResult& baseline,
                        const std::string& bus, double epsilon, const DispatchOptions& options) {
  bus_or_throw(grid, bus);
  SignalVector out{SignalId::lme, HourlyVector::Zero(), bus};
  for (int h = 0; h < kHoursPerDay; ++h) {
    out.values[h] = marginal_emissions(grid, scenario, bus, h, baseline, epsilon, options);
  }
  return out;
}

SignalVector lmp_signal(const GridCase& grid, const DispatchResult& dispatch, const std::string& bus) {
  const int b = bus_or_throw(grid, bus);
  return SignalVector{SignalId::lmp, dispatch.lmp.row(b).transpose(), bus};
}

SignalVector wme_surrogate(const GridCase& grid, const DispatchResult& baseline, const std::string& bus,
                           double price_tol) {
  const int b = bus_or_throw(grid, bus);
  SignalVector out{SignalId::wme, HourlyVector::Zero(), bus};
  for (int h = 0; h < kHoursPerDay; ++h) {
    int g = marginal_generator(grid, baseline, b, h, price_tol);
    if (g < 0) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < grid.generators.size(); ++k) {
        const double gap = std::abs(grid.generators[k].bid_price - baseline.lmp(b, h));
        if (gap < best) {
          best = gap;
          g = static_cast<int>(k);
        }
      }
    }
    out.values[h] = grid.carbon[grid.generators[g].technology];
  }
  return out;
}

SignalVector cfeg_surrogate(const GridCase& grid, const DispatchResult& baseline,
                            const std::vector<std::string>& contracted, const std::string& scope) {
  SignalVector out{SignalId::cfeg, HourlyVector::Zero(), scope};
  for (const auto& id : contracted) {
    const int g = grid.generator_index(id);
    if (g < 0) throw ConfigError("contracted unit '" + id + "' is not in the case");
    out.values += baseline.generation.row(g).transpose();
  }
  return out;
}

SignalTable SignalTable::read(const std::string& path) { return parse(read_file(path), path); }

SignalTable SignalTable::parse(std::string_view text, const std::string& file_name) {
  SignalTable table;
  Key current;
  long group_start = 0;
  int expected = 0;
  bool open = false;
  HourlyVector values = HourlyVector::Zero();
  auto close = [&]() {
    if (!open) return;
    if (expected != kHoursPerDay) {
      throw FormatError(file_name, group_start + expected, "hour",
                        "missing hour " + std::to_string(expected) + " of " + current.date + " " +
                            std::string(to_string(current.id)) + " " + current.scope);
    }
    if (!table.rows_.emplace(current, values).second) {
      throw FormatError(file_name, group_start, "", "duplicate signal block");
    }
    open = false;
  };
  for_each_csv_row(text, file_name, {"date", "hour", "name", "scope", "value"},
                   [&](long row, const std::vector<std::string_view>& f) {
                     Key key;
                     key.date = std::string(f[0]);
                     try {
                       key.id = signal_from_string(f[2]);
                     } catch (const ConfigError&) {
                       throw FormatError(file_name, row, "name", "unknown signal '" + std::string(f[2]) + "'");
                     }
                     key.scope = std::string(f[3]);
                     if (key.date.empty()) throw FormatError(file_name, row, "date", "empty date");
                     if (key.scope.empty()) throw FormatError(file_name, row, "scope", "empty scope");
                     if (!open || !(key == current)) {
                       close();
                       current = key;
                       group_start = row;
                       expected = 0;
                       open = true;
                     }
                     const long hour = csv_int(f[1], file_name, row, "hour");
                     if (hour != expected) {
                       throw FormatError(file_name, row, "hour",
                                         expected < kHoursPerDay ? "expected hour " + std::to_string(expected)
                                                                 : "more than 24 hours");
                     }
                     values[expected] = csv_double(f[4], file_name, row, "value");
                     ++expected;
                   });
  close();
  return table;
}

std::string SignalTable::to_csv() const {
  std::string out = "date,hour,name,scope,value\n";
  for (const auto& [key, v] : rows_) {
    for (int h = 0; h < kHoursPerDay; ++h) {
      out += key.date + "," + std::to_string(h) + "," + std::string(to_string(key.id)) + "," + key.scope + "," +
             format_double(v[h]) + "\n";
    }
  }
  return out;
}

void SignalTable::write(const std::string& path) const { write_file(path, to_csv()); }

void SignalTable::add(const std::string& date, const SignalVector& signal) {
  signal.check();
  rows_[Key{date, signal.name, signal.scope}] = signal.values;
}

bool SignalTable::contains(const std::string& date, SignalId id, const std::string& scope) const {
  return rows_.count(Key{date, id, scope}) > 0;
}

SignalVector SignalTable::get(const std::string& date, SignalId id, const std::string& scope) const {
  auto it = rows_.find(Key{date, id, scope});
  if (it == rows_.end()) {
    throw ConfigError("signal " + std::string(to_string(id)) + " for " + scope + " on " + date + " not available");
  }
  return SignalVector{id, it->second, scope};
}

std::vector<SignalVector> SignalTable::day(const std::string& date) const {
  std::vector<SignalVector> out;
  for (const auto& [key, v] : rows_) {
    if (key.date == date) out.push_back(SignalVector{key.id, v, key.scope});
  }
  return out;
}

std::vector<double> DayFeatures::values() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < flex_buses.size(); ++i) {
    out.insert(out.end(), {min_lmp[i], max_lmp[i], mean_lmp[i], median_lmp[i]});
  }
  out.insert(out.end(), {total_demand, gnd_total, avg_ci, total_renewables});
  out.insert(out.end(), zonal_renewables.begin(), zonal_renewables.end());
  return out;
}

std::vector<std::string> DayFeatures::names() const {
  std::vector<std::string> out;
  for (const auto& b : flex_buses) {
    for (const char* stat : {"min_lmp", "max_lmp", "mean_lmp", "median_lmp"}) out.push_back(std::string(stat) + "@" + b);
  }
  out.insert(out.end(), {"total_demand", "gnd_total", "avg_ci", "total_renewables"});
  for (const auto& z : zones) out.push_back("renewables@" + z);
  return out;
}

DayFeatures day_features(const GridCase& grid, const DayScenario& scenario, const DispatchResult& baseline,
                         const std::vector<std::string>& flex_buses) {
  (void)scenario;
  DayFeatures f;
  f.date = baseline.date;
  f.flex_buses = flex_buses;
  for (const auto& bus : flex_buses) {
    const HourlyVector lmp = baseline.lmp.row(bus_or_throw(grid, bus)).transpose();
    f.min_lmp.push_back(lmp.minCoeff());
    f.max_lmp.push_back(lmp.maxCoeff());
    f.mean_lmp.push_back(lmp.mean());
    f.median_lmp.push_back(median_of(lmp));
  }
  f.total_demand = baseline.demand.sum();
  f.gnd = grid_net_demand(grid, baseline).values;
  f.gnd_total = f.gnd.sum();
  const double generated = baseline.generation.sum();
  f.avg_ci = generated > 0.0 ? baseline.emissions * 1000.0 / generated : 0.0;
  f.total_renewables = baseline.renewables.sum();
  f.zones = grid.zones();
  for (const auto& z : f.zones) f.zonal_renewables.push_back(zonal_renewables(grid, baseline, z).values.sum());
  return f;
}

}  // namespace gridshift
