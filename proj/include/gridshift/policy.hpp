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

#ifndef GRIDSHIFT_POLICY_HPP
#define GRIDSHIFT_POLICY_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gridshift/analysis.hpp"
#include "gridshift/regimes.hpp"
#include "gridshift/strategies.hpp"

namespace gridshift {

/// A min(LMP) threshold in $/MWh; empty means unbounded (below always fires).
using Threshold = std::optional<double>;

struct Branch {
  StrategyId strategy = StrategyId::base;
  /// Replacement when the zone has (almost) no renewables.
  std::optional<StrategyId> if_no_renewables;

  bool operator==(const Branch&) const = default;
};

struct RegimeRule {
  Threshold threshold;
  Branch below;
  Branch at_or_above;

  bool operator==(const RegimeRule&) const = default;
};

struct Availability {
  bool renewables_present = true;
  bool wme_available = true;
};

/// Renewables count as absent when the zone's available wind and solar
/// energy is below 1% of the flexible load's daily energy.
bool renewables_present(double zonal_available_mwh, double flex_daily_mwh);

struct CherryPickPolicy {
  std::string name;
  std::string bus;
  RegimeRule low;
  RegimeRule high;
  /// Used when the chosen strategy is wme and no wme signal exists.
  StrategyId wme_fallback = StrategyId::base;

  const RegimeRule& rule(Regime r) const { return r == Regime::low_gnd ? low : high; }
  RegimeRule& rule(Regime r) { return r == Regime::low_gnd ? low : high; }

  /// Published rules for a northern and an eastern flexible bus.
  static CherryPickPolicy tesla(std::string bus = "TESLA");
  static CherryPickPolicy tylergnd(std::string bus = "TYLERGND");

  std::string to_json() const;
  /// Throws ConfigError on schema violations.
  static CherryPickPolicy from_json(std::string_view text);

  bool operator==(const CherryPickPolicy&) const = default;
};

StrategyId pick_strategy(const CherryPickPolicy& policy, Regime regime, double min_lmp,
                         const Availability& availability = {});

/// Per-day inputs to tuning: regime, min(LMP) and the savings of every
/// candidate strategy.
struct PolicyDay {
  std::string date;
  Regime regime = Regime::low_gnd;
  double min_lmp = 0.0;
  std::map<StrategyId, double> saved;  // tCO2
};

/// Groups impact records by date.  Records whose strategy is not a
/// StrategyId are ignored.  Throws ConfigError when a day lacks a candidate.
std::vector<PolicyDay> policy_days(const std::vector<ImpactRecord>& records,
                                   const std::vector<StrategyId>& candidates, std::size_t node = 0);

/// Integers -5..25 followed by unbounded.
std::vector<Threshold> default_threshold_grid();

struct RegimeChoice {
  Threshold threshold;
  StrategyId below = StrategyId::base;
  StrategyId at_or_above = StrategyId::base;
  double saved = 0.0;
  int days = 0;
};

struct TuneResult {
  RegimeChoice low;
  RegimeChoice high;
  double total = 0.0;
  /// Savings of each candidate applied every day, summed the same way.
  std::vector<std::pair<StrategyId, double>> single_strategy;

  CherryPickPolicy policy(std::string name, std::string bus) const;
};

/// Exhaustive search per regime over thresholds and (below, above) pairs.
/// Ties go to the smaller threshold, then to lexicographically smaller
/// strategy names.  Throws ConfigError on an empty grid or no candidates.
TuneResult tune_thresholds(const std::vector<PolicyDay>& days, const std::vector<StrategyId>& candidates,
                           const std::vector<Threshold>& grid = default_threshold_grid());

struct LoocvSelection {
  std::string date;
  Threshold threshold;
  StrategyId strategy = StrategyId::base;
  double saved = 0.0;
};

struct LoocvResult {
  double total = 0.0;
  std::vector<LoocvSelection> selections;
};

/// Leave-one-day-out: tune on the other days, apply to the held-out one.
LoocvResult loocv(const std::vector<PolicyDay>& days, const std::vector<StrategyId>& candidates,
                  const std::vector<Threshold>& grid = default_threshold_grid());

struct SensitivityCell {
  double low_threshold = 0.0;
  double high_threshold = 0.0;
  double saved = 0.0;
};

struct SensitivityResult {
  std::vector<SensitivityCell> cells;
  /// (max - min) / |max| over the cells; 0 when max is 0.
  double spread = 0.0;
};

/// Savings of the tuned strategy pairs over a grid of threshold pairs.
SensitivityResult sensitivity(const std::vector<PolicyDay>& days, const TuneResult& tuned,
                              const std::vector<double>& low_thresholds,
                              const std::vector<double>& high_thresholds);

struct TuneReport {
  TuneResult in_sample;
  LoocvResult loocv;
  SensitivityResult sensitivity;

  std::string csv() const;
  std::string summary() const;
};

/// Tuning, LOOCV and sensitivity over low [-3, 5] and high [8, 13].
TuneReport run_tuning(const std::vector<PolicyDay>& days, const std::vector<StrategyId>& candidates,
                      const std::vector<Threshold>& grid = default_threshold_grid());

struct HistoryDay {
  std::string date;
  Regime regime = Regime::low_gnd;
  double min_lmp = 0.0;
  double curtailment = 0.0;  // MWh
};

struct DerivedThreshold {
  Regime regime = Regime::low_gnd;
  Threshold threshold;
  double separation = 0.0;  // non-coal proportion below - above
  double z = 0.0;
  std::string diagnostic;
};

struct DerivationOptions {
  double z_critical = 1.96;
  double max_curtailment_share_above = 0.05;
};

/// For each regime, the grid threshold with the largest significant gap in
/// non-coal supply share of demand increases (below vs at-or-above),
/// subject to little curtailment on the days above it.  Unbounded with a
/// diagnostic when no threshold qualifies.
std::array<DerivedThreshold, 2> derive_thresholds_from_history(const std::vector<AttributionRow>& rows,
                                                               const std::vector<HistoryDay>& days,
                                                               const std::vector<Threshold>& grid = default_threshold_grid(),
                                                               const DerivationOptions& options = {});

std::string to_string(const Threshold& t);

}  // namespace gridshift

#endif  // GRIDSHIFT_POLICY_HPP
