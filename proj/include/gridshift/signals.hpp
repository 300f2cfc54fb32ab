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

#ifndef GRIDSHIFT_SIGNALS_HPP
#define GRIDSHIFT_SIGNALS_HPP

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gridshift/dispatch.hpp"

namespace gridshift {

enum class SignalId { avg_ci, lmp, lme, ws, zws, wme, cfeg, gnd };

inline constexpr std::array<SignalId, 8> kAllSignals = {SignalId::avg_ci, SignalId::lmp, SignalId::lme,
                                                        SignalId::ws,     SignalId::zws, SignalId::wme,
                                                        SignalId::cfeg,   SignalId::gnd};

/// Whether flexible load moves toward the low or the high values of a signal.
enum class Orientation { load_where_low, load_where_high };

constexpr Orientation orientation(SignalId id) {
  switch (id) {
    case SignalId::avg_ci:
    case SignalId::lmp:
    case SignalId::lme:
    case SignalId::wme:
    case SignalId::gnd:
      return Orientation::load_where_low;
    case SignalId::ws:
    case SignalId::zws:
    case SignalId::cfeg:
      return Orientation::load_where_high;
  }
  return Orientation::load_where_low;
}

std::string_view to_string(SignalId id);
/// Throws ConfigError for unknown names.
SignalId signal_from_string(std::string_view name);

/// Scope used for signals that cover the whole system.
inline constexpr std::string_view kSystemScope = "system";

struct SignalVector {
  SignalId name = SignalId::lmp;
  HourlyVector values = HourlyVector::Zero();
  /// A bus id, a zone id or "system".
  std::string scope{kSystemScope};

  /// Throws StructuralError on non-finite values.
  void check() const;
};

/// Signals available for one day, looked up by id and scope.
class SignalSet {
 public:
  void add(SignalVector signal);
  /// Exact scope match, else nullptr.
  const SignalVector* find(SignalId id, std::string_view scope) const;
  /// Bus scope, then the bus's zone, then system; nullptr when absent.
  const SignalVector* resolve(SignalId id, const GridCase& grid, std::string_view bus) const;
  const std::vector<SignalVector>& all() const { return signals_; }

 private:
  std::vector<SignalVector> signals_;
};

/// Generation-weighted carbon intensity per hour, g/kWh.
SignalVector avg_carbon_intensity(const GridCase& grid, const DispatchResult& dispatch);

/// Total demand minus available wind and solar, MW.
SignalVector grid_net_demand(const GridCase& grid, const DayScenario& scenario);
/// As above using the dispatch's demand (flexible load included); renewables
/// are the available ones unless use_dispatched is set.
SignalVector grid_net_demand(const GridCase& grid, const DispatchResult& dispatch,
                             bool use_dispatched = false);

/// Available wind + solar; empty zone means all zones (ws), otherwise zws.
SignalVector zonal_renewables(const GridCase& grid, const DayScenario& scenario, const std::string& zone = "");
/// Dispatched wind + solar in scope.
SignalVector zonal_renewables(const GridCase& grid, const DispatchResult& dispatch, const std::string& zone = "");

/// Locational marginal emissions at a bus, one re-solve per hour.
SignalVector lme_signal(const GridCase& grid, const DayScenario& scenario, const DispatchResult& baseline,
                        const std::string& bus, double epsilon = 1.0, const DispatchOptions& options = {});

/// Nodal LMP of the dispatch at a bus.
SignalVector lmp_signal(const GridCase& grid, const DispatchResult& dispatch, const std::string& bus);

/// Surrogate wme: carbon intensity of the price-setting unit at the bus; if
/// none is identified, of the unit whose bid is nearest the LMP.
SignalVector wme_surrogate(const GridCase& grid, const DispatchResult& baseline, const std::string& bus,
                           double price_tol = 1e-6);

/// Surrogate cfeg: dispatched output of the contracted renewable units.
SignalVector cfeg_surrogate(const GridCase& grid, const DispatchResult& baseline,
                            const std::vector<std::string>& contracted, const std::string& scope);

/// Rows of a signal CSV (date,hour,name,scope,value) grouped per
/// (date, name, scope).
class SignalTable {
 public:
  /// Throws FormatError naming the file and row for malformed or missing rows.
  static SignalTable read(const std::string& path);
  static SignalTable parse(std::string_view text, const std::string& file_name);
  void write(const std::string& path) const;
  std::string to_csv() const;

  void add(const std::string& date, const SignalVector& signal);
  /// Throws ConfigError when the signal is absent.
  SignalVector get(const std::string& date, SignalId id, const std::string& scope) const;
  bool contains(const std::string& date, SignalId id, const std::string& scope) const;
  std::vector<SignalVector> day(const std::string& date) const;
  bool empty() const { return rows_.empty(); }
  bool operator==(const SignalTable&) const = default;

 private:
  struct Key {
    std::string date;
    SignalId id;
    std::string scope;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, HourlyVector> rows_;

};

/// Daily features used by the policy and the feature study.
struct DayFeatures {
  std::string date;
  std::vector<std::string> flex_buses;
  std::vector<double> min_lmp;
  std::vector<double> max_lmp;
  std::vector<double> mean_lmp;
  std::vector<double> median_lmp;
  double total_demand = 0.0;  // MWh
  HourlyVector gnd = HourlyVector::Zero();
  double gnd_total = 0.0;     // MWh
  double avg_ci = 0.0;        // g/kWh
  double total_renewables = 0.0;  // MWh dispatched
  std::vector<std::string> zones;
  std::vector<double> zonal_renewables;  // MWh dispatched, per zone

  /// Flat feature vector and matching names, in a fixed order.
  std::vector<double> values() const;
  std::vector<std::string> names() const;
};

DayFeatures day_features(const GridCase& grid, const DayScenario& scenario, const DispatchResult& baseline,
                         const std::vector<std::string>& flex_buses);

}  // namespace gridshift

#endif  // GRIDSHIFT_SIGNALS_HPP
