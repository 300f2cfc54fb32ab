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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gridshift/csv.hpp"
#include "gridshift/feature_study.hpp"
#include "gridshift/format.hpp"
#include "gridshift/pipeline.hpp"
#include "gridshift/reports.hpp"
#include "gridshift/synthetic.hpp"

namespace fs = std::filesystem;
using namespace gridshift;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<StrategyId> parse_strategies(const std::string& text) {
  if (text == "all") return {kAllStrategies.begin(), kAllStrategies.end()};
  std::vector<StrategyId> out;
  for (const auto& name : split(text, ',')) {
    const StrategyId s = strategy_from_string(name);
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  if (out.empty()) throw ConfigError("no strategy given");
  return out;
}

CherryPickPolicy load_policy(const std::string& spec) {
  if (spec == "tesla") return CherryPickPolicy::tesla();
  if (spec == "tylergnd") return CherryPickPolicy::tylergnd();
  return CherryPickPolicy::from_json(read_file(spec));
}

/// Day position of an index or ISO date.
std::size_t day_position(const ScenarioBundle& bundle, const std::string& token) {
  if (token.find('-') != std::string::npos) {
    for (std::size_t i = 0; i < bundle.days.size(); ++i) {
      if (bundle.days[i].date == token) return i;
    }
    throw ConfigError("date " + token + " is not in the bundle");
  }
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size()) throw ConfigError("bad day '" + token + "'");
  return v;
}

/// START (one day) or START:END (half-open); each an index or a date.
std::pair<std::size_t, std::size_t> parse_days(const ScenarioBundle& bundle, const std::string& text) {
  const auto colon = text.find(':');
  const std::size_t first = day_position(bundle, text.substr(0, colon));
  const std::size_t last = colon == std::string::npos ? first + 1 : day_position(bundle, text.substr(colon + 1));
  if (last <= first || last > bundle.days.size()) throw ConfigError("empty or out-of-range day range '" + text + "'");
  return {first, last};
}

struct RunInfo {
  std::vector<std::string> nodes;
  std::string bundle;
};

RunInfo read_run_info(const fs::path& dir) {
  const auto j = nlohmann::json::parse(read_file((dir / "run.json").string()));
  RunInfo info;
  info.nodes = j.at("nodes").get<std::vector<std::string>>();
  info.bundle = j.at("bundle").get<std::string>();
  return info;
}

std::vector<ImpactRecord> read_impacts(const fs::path& dir) {
  const fs::path path = dir / "impacts.csv";
  return parse_impact_csv(read_file(path.string()), path.string());
}

struct Options {
  std::string bundle;
  std::string strategy = "base";
  std::string policy;
  std::string nodes;
  std::string days;
  std::string out = ".";
  std::string labels = "bundle";
  std::string name = "tuned";
  int jobs = 1;
  std::uint64_t seed = 1;
  int n_days = 365;
  bool keep_going = false;
  bool year = false;
  bool no_dispatch = false;
};

void cmd_generate(const Options& o) {
  SynthConfig cfg;
  cfg.seed = o.seed;
  cfg.days = o.n_days;
  const ScenarioBundle bundle = generate_synthetic_year(cfg);
  write_bundle(bundle, o.out);
  std::cout << "generated " << bundle.days.size() << " days into " << o.out << "\n";
}

void cmd_simulate(const Options& o) {
  if (o.bundle.empty()) throw ConfigError("--bundle is required");
  const ScenarioBundle bundle = load_bundle(o.bundle);
  RunOptions run;
  run.nodes = split(o.nodes, ',');
  run.strategies = parse_strategies(o.strategy);
  if (!o.policy.empty()) run.policy = load_policy(o.policy);
  if (!o.days.empty() && !o.year) run.days = parse_days(bundle, o.days);
  run.jobs = o.jobs;
  run.keep_going = o.keep_going;
  run.keep_dispatch = !o.no_dispatch;
  run.regimes.seed = o.seed;

  const YearRun result = run_year(bundle, run);
  const fs::path out(o.out);
  fs::create_directories(out);

  nlohmann::ordered_json info;
  info["format_version"] = 1;
  info["bundle"] = o.bundle;
  info["nodes"] = nlohmann::json::array();
  for (const auto& f : result.flex) info["nodes"].push_back(f.bus);
  info["strategies"] = nlohmann::json::array();
  for (StrategyId s : run.strategies) info["strategies"].push_back(std::string(to_string(s)));
  info["policy"] = run.policy ? nlohmann::ordered_json(run.policy->name) : nlohmann::ordered_json();
  info["seed"] = o.seed;
  info["failed_days"] = result.failed_days();
  write_file((out / "run.json").string(), info.dump(2) + "\n");

  write_file((out / "impacts.csv").string(), impact_csv(result.records()));
  write_file((out / "shapes.csv").string(), shapes_csv(result));
  write_file((out / "features.csv").string(), features_csv(result));
  write_file((out / "days.csv").string(), days_csv(result));
  if (run.keep_dispatch) {
    write_file((out / "dispatch_generation.csv").string(), dispatch_generation_csv(bundle.grid, result));
    write_file((out / "dispatch_emissions.csv").string(), dispatch_emissions_csv(result));
    write_file((out / "dispatch_lmp.csv").string(), dispatch_lmp_csv(bundle.grid, result));
    write_file((out / "dispatch_flow.csv").string(), dispatch_flow_csv(bundle.grid, result));
    write_file((out / "case.json").string(), grid_case_json(bundle.grid));
    if (result.days.size() - result.failed_days() >= 2) {
      const YearAnalysis analysis = analyze_year(bundle.grid, result);
      write_file((out / "marginal_tech.csv").string(), marginal_csv(analysis.marginal));
      write_file((out / "attribution.csv").string(), attribution_csv(summarize_attribution(analysis.attribution)));
      write_file((out / "thresholds.csv").string(), thresholds_csv(analysis.thresholds));
      write_file((out / "peak_hours.csv").string(), analysis.peak_csv());
    }
  }
  std::cout << "simulated " << result.days.size() << " days (" << result.failed_days() << " failed) into "
            << o.out << "\n";
}

std::vector<StrategyId> candidates_in(const std::vector<ImpactRecord>& records) {
  std::set<StrategyId> found;
  for (const auto& r : records) {
    if (r.strategy == kPolicyLabel) continue;
    const StrategyId s = strategy_from_string(r.strategy);
    if (s != StrategyId::base && s != StrategyId::opt) found.insert(s);
  }
  if (found.empty()) throw ConfigError("impacts.csv holds no candidate strategies to tune over");
  return {found.begin(), found.end()};
}

void cmd_tune(const Options& o) {
  const fs::path dir(o.out);
  const RunInfo info = read_run_info(dir);
  const auto records = read_impacts(dir);
  const auto candidates = candidates_in(records);
  const auto days = policy_days(records, candidates);
  const TuneReport report = run_tuning(days, candidates);
  const CherryPickPolicy policy = report.in_sample.policy(o.name, info.nodes.front());
  write_file((dir / "policy.json").string(), policy.to_json());
  write_file((dir / "tuning.csv").string(), report.csv());
  write_file((dir / "tuning.txt").string(), report.summary());
  std::cout << report.summary();
}

void cmd_features(const Options& o) {
  const fs::path dir(o.out);
  const fs::path path = dir / "features.csv";
  const std::string text = read_file(path.string());
  const std::vector<std::string> header = split(text.substr(0, text.find('\n')), ',');
  if (header.empty() || header.front() != "date") throw FormatError(path.string(), 1, "date", "expected a date column");

  std::map<std::string, StrategyId> label;
  if (o.labels == "bundle") {
    const std::string bundle = o.bundle.empty() ? read_run_info(dir).bundle : o.bundle;
    const fs::path lpath = fs::path(bundle) / "labels.csv";
    for (const auto& l : parse_labels_csv(read_file(lpath.string()), lpath.string())) label[l.date] = l.strategy;
  } else if (o.labels == "best") {
    const auto records = read_impacts(dir);
    const auto candidates = candidates_in(records);
    for (const auto& d : policy_days(records, candidates)) {
      StrategyId best = candidates.front();
      for (StrategyId s : candidates) {
        if (d.saved.at(s) > d.saved.at(best)) best = s;
      }
      label[d.date] = best;
    }
  } else {
    throw ConfigError("--labels must be bundle or best");
  }

  FeatureData data;
  data.names.assign(header.begin() + 1, header.end());
  for_each_csv_row(text, path.string(), header, [&](long row, const std::vector<std::string_view>& f) {
    const auto it = label.find(std::string(f.front()));
    if (it == label.end()) return;
    std::vector<double> x;
    for (std::size_t c = 1; c < f.size(); ++c) x.push_back(csv_double(f[c], path.string(), row, header[c]));
    data.x.push_back(std::move(x));
    data.y.push_back(static_cast<int>(it->second));
  });
  ForestOptions forest;
  forest.seed = o.seed;
  const StumpForest model = train_forest(data, forest);
  const auto ranked = feature_importance(model, data.names);
  const int k = static_cast<int>(std::min<std::size_t>(10, data.size()));
  const double accuracy = cross_validate(data, k, forest);
  write_file((dir / "importance.csv").string(), importance_csv(ranked));
  std::ostringstream s;
  s << "days " << data.size() << "\n";
  s << "cv_accuracy " << format_fixed(accuracy, 4) << "\n";
  s << "majority_rate " << format_fixed(data.majority_rate(), 4) << "\n";
  for (std::size_t i = 0; i < std::min<std::size_t>(5, ranked.size()); ++i) {
    s << "top" << i + 1 << ' ' << ranked[i].name << ' ' << format_fixed(ranked[i].importance, 4) << "\n";
  }
  write_file((dir / "features.txt").string(), s.str());
  std::cout << s.str();
}

void cmd_report(const Options& o) {
  const fs::path dir(o.out);
  const auto records = read_impacts(dir);
  const auto totals = yearly_summary(records);
  write_file((dir / "summary.csv").string(), summary_csv(totals));
  write_file((dir / "regime_summary.csv").string(), regime_summary_csv(records));

  std::ostringstream s;
  s << "strategy      days  co2_saved_kt  avg_price_change\n";
  for (const auto& t : totals) {
    std::string name = t.strategy;
    name.resize(std::max<std::size_t>(name.size(), 12), ' ');
    s << name << "  " << t.days << "  " << format_fixed(t.co2_saved_kt(), 3) << "  "
      << format_fixed(t.avg_price_change, 4) << "\n";
  }
  if (fs::exists(dir / "policy.json")) {
    const CherryPickPolicy p = CherryPickPolicy::from_json(read_file((dir / "policy.json").string()));
    s << "\npolicy " << p.name << " at " << p.bus << "\n";
    for (const auto& [label, rule] : {std::pair{"low_gnd", p.low}, std::pair{"high_gnd", p.high}}) {
      s << "  " << label << ": threshold " << to_string(rule.threshold) << ", below " << to_string(rule.below.strategy)
        << ", at/above " << to_string(rule.at_or_above.strategy) << "\n";
    }
  }
  if (fs::exists(dir / "thresholds.csv")) s << "\nderived thresholds\n" << read_file((dir / "thresholds.csv").string());
  write_file((dir / "report.txt").string(), s.str());
  std::cout << s.str();
}

int exit_code_of(const std::exception_ptr& e, std::string& kind, std::string& message) {
  try {
    std::rethrow_exception(e);
  } catch (const ConfigError& x) {
    kind = "config";
    message = x.what();
    return 2;
  } catch (const FormatError& x) {
    kind = "format";
    message = x.what();
    return 2;
  } catch (const InfeasibleError& x) {
    kind = "infeasible";
    message = x.what();
    return 3;
  } catch (const NumericalError& x) {
    kind = "numerical";
    message = x.what();
    return 4;
  } catch (const StructuralError& x) {
    kind = "structural";
    message = x.what();
    return 2;
  } catch (const std::exception& x) {
    kind = "other";
    message = x.what();
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Carbon-aware flexible load shaping on a DC-OPF grid model"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("generate", "Write a synthetic scenario bundle");
  gen->add_option("--out", o.out, "Bundle directory")->required();
  gen->add_option("--seed", o.seed, "Random seed");
  gen->add_option("--days", o.n_days, "Number of days")->check(CLI::PositiveNumber);

  auto* sim = app.add_subcommand("simulate", "Run the baseline and counterfactual strategies");
  sim->add_option("--bundle", o.bundle, "Scenario bundle directory")->required();
  sim->add_option("--strategy", o.strategy, "Strategy list or 'all'");
  sim->add_option("--policy", o.policy, "Policy file, or the preset tesla / tylergnd");
  sim->add_option("--nodes", o.nodes, "One or two flexible buses, comma separated");
  sim->add_option("--days", o.days, "Day or half-open range START:END (indices or dates)");
  sim->add_flag("--year", o.year, "Run every day");
  sim->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  sim->add_option("--out", o.out, "Output directory");
  sim->add_option("--seed", o.seed, "Regime clustering seed");
  sim->add_flag("--keep-going", o.keep_going, "Skip failing days");
  sim->add_flag("--no-dispatch", o.no_dispatch, "Skip dispatch exports");

  auto* tune = app.add_subcommand("tune", "Tune a cherry-pick policy from simulate output");
  tune->add_option("--out", o.out, "Simulate output directory");
  tune->add_option("--name", o.name, "Policy name");

  auto* feat = app.add_subcommand("features", "Feature importance study");
  feat->add_option("--out", o.out, "Simulate output directory");
  feat->add_option("--bundle", o.bundle, "Bundle with labels.csv (default: the simulated one)");
  feat->add_option("--labels", o.labels, "bundle or best")->check(CLI::IsMember({"bundle", "best"}));
  feat->add_option("--seed", o.seed, "Forest seed");

  auto* rep = app.add_subcommand("report", "Summary tables from simulate output");
  rep->add_option("--out", o.out, "Simulate output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) cmd_generate(o);
    if (*sim) cmd_simulate(o);
    if (*tune) cmd_tune(o);
    if (*feat) cmd_features(o);
    if (*rep) cmd_report(o);
  } catch (...) {
    std::string kind, message;
    const int code = exit_code_of(std::current_exception(), kind, message);
    nlohmann::ordered_json line;
    line["error"] = kind;
    line["message"] = message;
    std::cerr << line.dump() << "\n";
    return code;
  }
  return 0;
}
