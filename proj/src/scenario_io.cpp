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

#include "gridshift/scenario_io.hpp"

#include <cmath>
#include <filesystem>
#include <functional>
#include <map>

#include "gridshift/csv.hpp"
#include "gridshift/format.hpp"
#include "json.hpp"

namespace gridshift {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string join(const std::string& dir, const char* name) { return (fs::path(dir) / name).string(); }

/// Parses date,hour,entity,value blocks of 24 consecutive hours and hands
/// each completed block to fn(date, entity, values, first_row).
void for_each_series(std::string_view text, const std::string& file,
                     const std::function<void(long, const std::string&, double)>& check_value,
                     const std::function<void(const std::string&, const std::string&, const HourlyVector&, long)>& fn) {
  std::string date, entity;
  long start = 0;
  int expected = 0;
  bool open = false;
  HourlyVector values = HourlyVector::Zero();
  auto close = [&]() {
    if (!open) return;
    if (expected != kHoursPerDay) {
      throw FormatError(file, start + expected, "hour",
                        "missing hour " + std::to_string(expected) + " of " + date + " " + entity);
    }
    fn(date, entity, values, start);
    open = false;
  };
  for_each_csv_row(text, file, {"date", "hour", "entity", "value"},
                   [&](long row, const std::vector<std::string_view>& f) {
                     if (f[0].empty()) throw FormatError(file, row, "date", "empty date");
                     if (f[2].empty()) throw FormatError(file, row, "entity", "empty entity");
                     if (!open || f[0] != date || f[2] != entity) {
                       close();
                       date = std::string(f[0]);
                       entity = std::string(f[2]);
                       start = row;
                       expected = 0;
                       open = true;
                     }
                     const long hour = csv_int(f[1], file, row, "hour");
                     if (hour != expected) {
                       throw FormatError(file, row, "hour",
                                         expected < kHoursPerDay ? "expected hour " + std::to_string(expected)
                                                                 : "more than 24 hours");
                     }
                     const double v = csv_double(f[3], file, row, "value");
                     check_value(row, entity, v);
                     values[expected++] = v;
                   });
  close();
}

std::map<std::string, std::size_t> day_index(const std::vector<DayScenario>& days) {
  std::map<std::string, std::size_t> out;
  for (std::size_t d = 0; d < days.size(); ++d) out.emplace(days[d].date, d);
  return out;
}

std::string series_csv(const std::vector<DayScenario>& days, const std::vector<std::string>& ids,
                       const std::function<const HourlyTable&(const DayScenario&)>& table,
                       const std::function<bool(std::size_t)>& include) {
  std::string out = "date,hour,entity,value\n";
  for (const auto& d : days) {
    const HourlyTable& t = table(d);
    for (std::size_t e = 0; e < ids.size(); ++e) {
      if (!include(e)) continue;
      for (int h = 0; h < kHoursPerDay; ++h) {
        out += d.date + ',' + std::to_string(h) + ',' + ids[e] + ',' + format_double(t(static_cast<Eigen::Index>(e), h)) + '\n';
      }
    }
  }
  return out;
}

json flex_json(const FlexLoadSpec& f) {
  return json{{"bus", f.bus},
              {"base", f.base},
              {"delta", f.delta},
              {"hours_up", f.hours_up},
              {"hours_down", f.hours_down},
              {"hours_flat", f.hours_flat}};
}

FlexLoadSpec flex_from(const json& j) {
  FlexLoadSpec f;
  f.bus = j.at("bus").get<std::string>();
  f.base = j.at("base").get<int>();
  f.delta = j.at("delta").get<int>();
  f.hours_up = j.at("hours_up").get<int>();
  f.hours_down = j.at("hours_down").get<int>();
  f.hours_flat = j.at("hours_flat").get<int>();
  f.check();
  return f;
}

json case_json(const GridCase& grid) {
  json j;
  j["slack_bus"] = grid.slack_bus;
  j["buses"] = json::array();
  for (const auto& b : grid.buses) j["buses"].push_back({{"id", b.id}, {"zone", b.zone}});
  j["lines"] = json::array();
  for (const auto& l : grid.lines) {
    j["lines"].push_back({{"id", l.id},
                          {"from", l.from_bus},
                          {"to", l.to_bus},
                          {"susceptance", l.susceptance},
                          {"flow_limit", l.flow_limit}});
  }
  j["generators"] = json::array();
  for (const auto& g : grid.generators) {
    json e{{"id", g.id},
           {"bus", g.bus},
           {"technology", std::string(to_string(g.technology))},
           {"p_min", g.p_min},
           {"p_max", g.p_max},
           {"bid_price", g.bid_price}};
    e["daily_energy_budget"] = g.daily_energy_budget ? json(*g.daily_energy_budget) : json(nullptr);
    j["generators"].push_back(e);
  }
  json carbon = json::object();
  for (Technology t : kAllTechnologies) carbon[std::string(to_string(t))] = grid.carbon[t];
  j["carbon_intensity"] = carbon;
  return j;
}

GridCase case_from(const json& j) {
  GridCase c;
  c.slack_bus = j.at("slack_bus").get<std::string>();
  for (const auto& b : j.at("buses")) c.buses.push_back({b.at("id").get<std::string>(), b.at("zone").get<std::string>()});
  for (const auto& l : j.at("lines")) {
    c.lines.push_back({l.at("id").get<std::string>(), l.at("from").get<std::string>(), l.at("to").get<std::string>(),
                       l.at("susceptance").get<double>(), l.at("flow_limit").get<double>()});
  }
  for (const auto& g : j.at("generators")) {
    GeneratorSpec s;
    s.id = g.at("id").get<std::string>();
    s.bus = g.at("bus").get<std::string>();
    s.technology = technology_from_string(g.at("technology").get<std::string>());
    s.p_min = g.at("p_min").get<double>();
    s.p_max = g.at("p_max").get<double>();
    s.bid_price = g.at("bid_price").get<double>();
    if (g.contains("daily_energy_budget") && !g.at("daily_energy_budget").is_null()) {
      s.daily_energy_budget = g.at("daily_energy_budget").get<double>();
    }
    c.generators.push_back(std::move(s));
  }
  if (j.contains("carbon_intensity")) {
    for (const auto& [name, v] : j.at("carbon_intensity").items()) c.carbon.set(technology_from_string(name), v.get<double>());
  }
  const auto violations = validate_case(c);
  if (!violations.empty()) {
    std::string msg = "invalid grid case:";
    for (const auto& v : violations) msg += " [" + v.entity + ": " + v.rule + "]";
    throw ConfigError(msg);
  }
  return c;
}

}  // namespace

const DayScenario& ScenarioBundle::day(std::string_view date) const {
  for (const auto& d : days) {
    if (d.date == date) return d;
  }
  throw ConfigError("bundle has no day " + std::string(date));
}

bool operator==(const ScenarioBundle& a, const ScenarioBundle& b) {
  if (grid_case_json(a.grid) != grid_case_json(b.grid)) return false;
  if (a.days.size() != b.days.size() || a.flex.size() != b.flex.size()) return false;
  for (std::size_t i = 0; i < a.flex.size(); ++i) {
    if (flex_json(a.flex[i]) != flex_json(b.flex[i])) return false;
  }
  for (std::size_t d = 0; d < a.days.size(); ++d) {
    if (a.days[d].date != b.days[d].date || a.days[d].bus_demand != b.days[d].bus_demand ||
        a.days[d].availability != b.days[d].availability) {
      return false;
    }
  }
  return a.signals == b.signals && a.labels == b.labels && a.cfeg_units == b.cfeg_units && a.seed == b.seed;
}

std::string grid_case_json(const GridCase& grid) { return case_json(grid).dump(2) + "\n"; }

GridCase parse_grid_case(std::string_view text) {
  try {
    return case_from(json::parse(text));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("grid case: ") + e.what());
  }
}

std::string demand_csv(const ScenarioBundle& bundle) {
  std::vector<std::string> ids;
  for (const auto& b : bundle.grid.buses) ids.push_back(b.id);
  return series_csv(bundle.days, ids, [](const DayScenario& d) -> const HourlyTable& { return d.bus_demand; },
                    [](std::size_t) { return true; });
}

std::string availability_csv(const ScenarioBundle& bundle) {
  std::vector<std::string> ids;
  for (const auto& g : bundle.grid.generators) ids.push_back(g.id);
  // Units at full availability all day are omitted.
  return series_csv(bundle.days, ids, [](const DayScenario& d) -> const HourlyTable& { return d.availability; },
                    [&](std::size_t g) {
                      for (const auto& d : bundle.days) {
                        if ((d.availability.row(static_cast<Eigen::Index>(g)).array() != 1.0).any()) return true;
                      }
                      return false;
                    });
}

std::string labels_csv(const std::vector<DayLabel>& labels) {
  std::string out = "date,season,strategy\n";
  for (const auto& l : labels) {
    out += l.date + ',' + std::string(to_string(l.season)) + ',' + std::string(to_string(l.strategy)) + '\n';
  }
  return out;
}

void parse_demand_csv(std::string_view text, const std::string& file, const GridCase& grid,
                      std::vector<DayScenario>& days) {
  const auto index = day_index(days);
  std::vector<std::vector<bool>> seen(days.size(), std::vector<bool>(grid.buses.size(), false));
  for_each_series(
      text, file,
      [&](long row, const std::string& entity, double v) {
        if (grid.bus_index(entity) < 0) throw FormatError(file, row, "entity", "unknown bus '" + entity + "'");
        if (!std::isfinite(v) || v < 0.0) throw FormatError(file, row, "value", "demand must be finite and >= 0");
      },
      [&](const std::string& date, const std::string& entity, const HourlyVector& v, long row) {
        const auto it = index.find(date);
        if (it == index.end()) throw FormatError(file, row, "date", "day " + date + " is not in the bundle");
        const int b = grid.bus_index(entity);
        if (seen[it->second][b]) throw FormatError(file, row, "entity", "duplicate series for " + entity);
        seen[it->second][b] = true;
        days[it->second].bus_demand.row(b) = v.transpose();
      });
  for (std::size_t d = 0; d < days.size(); ++d) {
    for (std::size_t b = 0; b < grid.buses.size(); ++b) {
      if (!seen[d][b]) throw FormatError(file, 0, "entity", "no demand for " + grid.buses[b].id + " on " + days[d].date);
    }
  }
}

void parse_availability_csv(std::string_view text, const std::string& file, const GridCase& grid,
                            std::vector<DayScenario>& days) {
  const auto index = day_index(days);
  for_each_series(
      text, file,
      [&](long row, const std::string& entity, double v) {
        if (grid.generator_index(entity) < 0) throw FormatError(file, row, "entity", "unknown generator '" + entity + "'");
        if (!(v >= 0.0 && v <= 1.0)) throw FormatError(file, row, "value", "availability " + format_double(v) + " outside [0, 1]");
      },
      [&](const std::string& date, const std::string& entity, const HourlyVector& v, long row) {
        const auto it = index.find(date);
        if (it == index.end()) throw FormatError(file, row, "date", "day " + date + " is not in the bundle");
        days[it->second].availability.row(grid.generator_index(entity)) = v.transpose();
      });
}

std::vector<DayLabel> parse_labels_csv(std::string_view text, const std::string& file) {
  std::vector<DayLabel> out;
  for_each_csv_row(text, file, {"date", "season", "strategy"}, [&](long row, const std::vector<std::string_view>& f) {
    DayLabel l;
    l.date = std::string(f[0]);
    try {
      l.season = regime_from_string(f[1]);
    } catch (const ConfigError&) {
      throw FormatError(file, row, "season", "unknown season");
    }
    try {
      l.strategy = strategy_from_string(f[2]);
    } catch (const ConfigError&) {
      throw FormatError(file, row, "strategy", "unknown strategy");
    }
    out.push_back(std::move(l));
  });
  return out;
}

void write_bundle(const ScenarioBundle& bundle, const std::string& dir) {
  fs::create_directories(dir);
  json j;
  j["format_version"] = kBundleFormatVersion;
  j["seed"] = bundle.seed;
  j["case"] = case_json(bundle.grid);
  j["flex"] = json::array();
  for (const auto& f : bundle.flex) j["flex"].push_back(flex_json(f));
  j["days"] = json::array();
  for (const auto& d : bundle.days) j["days"].push_back(d.date);
  j["cfeg_units"] = bundle.cfeg_units;
  write_file(join(dir, "bundle.json"), j.dump(2) + "\n");
  write_file(join(dir, "demand.csv"), demand_csv(bundle));
  write_file(join(dir, "availability.csv"), availability_csv(bundle));
  const std::string signals = join(dir, "signals.csv");
  const std::string labels = join(dir, "labels.csv");
  if (!bundle.signals.empty()) {
    bundle.signals.write(signals);
  } else {
    fs::remove(signals);
  }
  if (!bundle.labels.empty()) {
    write_file(labels, labels_csv(bundle.labels));
  } else {
    fs::remove(labels);
  }
}

ScenarioBundle load_bundle(const std::string& dir) {
  ScenarioBundle b;
  const std::string meta_file = join(dir, "bundle.json");
  try {
    const json j = json::parse(read_file(meta_file));
    const int version = j.at("format_version").get<int>();
    if (version != kBundleFormatVersion) {
      throw ConfigError(meta_file + ": unsupported format_version " + std::to_string(version));
    }
    b.seed = j.at("seed").get<std::uint64_t>();
    b.grid = case_from(j.at("case"));
    for (const auto& f : j.at("flex")) b.flex.push_back(flex_from(f));
    for (const auto& d : j.at("days")) {
      DayScenario s;
      s.date = d.get<std::string>();
      s.bus_demand = HourlyTable::Zero(static_cast<Eigen::Index>(b.grid.buses.size()), kHoursPerDay);
      s.availability = HourlyTable::Ones(static_cast<Eigen::Index>(b.grid.generators.size()), kHoursPerDay);
      b.days.push_back(std::move(s));
    }
    if (j.contains("cfeg_units")) b.cfeg_units = j.at("cfeg_units").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ConfigError(meta_file + ": " + e.what());
  }
  for (const auto& f : b.flex) {
    if (b.grid.bus_index(f.bus) < 0) throw ConfigError(meta_file + ": flexible load at unknown bus " + f.bus);
  }
  const std::string demand_file = join(dir, "demand.csv");
  const std::string avail_file = join(dir, "availability.csv");
  parse_demand_csv(read_file(demand_file), demand_file, b.grid, b.days);
  parse_availability_csv(read_file(avail_file), avail_file, b.grid, b.days);
  const std::string signals = join(dir, "signals.csv");
  if (fs::exists(signals)) b.signals = SignalTable::read(signals);
  const std::string labels = join(dir, "labels.csv");
  if (fs::exists(labels)) b.labels = parse_labels_csv(read_file(labels), labels);
  return b;
}

}  // namespace gridshift
