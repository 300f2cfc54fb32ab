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

#ifndef GRIDSHIFT_DISPATCH_HPP
#define GRIDSHIFT_DISPATCH_HPP

#include <span>
#include <string>
#include <vector>

#include "gridshift/common.hpp"
#include "gridshift/grid_model.hpp"
#include "gridshift/lp/simplex.hpp"

namespace gridshift {

/// Inputs of one day: inelastic demand per bus and availability per generator.
struct DayScenario {
  std::string date;
  HourlyTable bus_demand;    // buses x 24, MW
  HourlyTable availability;  // generators x 24, fraction of p_max

  /// Throws StructuralError on shape or range problems.
  void check(const GridCase& grid) const;
};

struct DispatchOptions {
  lp::SimplexOptions<double> simplex;
  /// Bid/LMP agreement used to recognise the price-setting unit, $/MWh.
  double price_tol = 1e-6;
};

struct DispatchResult {
  std::string date;
  HourlyTable generation;   // generators x 24, MW
  HourlyTable lmp;          // buses x 24, $/MWh
  HourlyTable flow;         // lines x 24, MW (from -> to positive)
  HourlyTable curtailment;  // generators x 24, MW; zero for non-intermittent units
  HourlyTable bus_demand;   // buses x 24, MW, including flexible load
  HourlyVector demand = HourlyVector::Zero();
  HourlyVector renewables = HourlyVector::Zero();            // dispatched wind + solar
  HourlyVector available_renewables = HourlyVector::Zero();  // availability x p_max
  HourlyVector hourly_emissions = HourlyVector::Zero();      // tCO2
  double cost = 0.0;           // sum of bid x output, $
  double load_payment = 0.0;   // sum of LMP x bus demand, $
  double emissions = 0.0;      // tCO2
  /// Simplex status of each generator output, index g * 24 + h.
  std::vector<lp::VarState> generator_state;

  lp::VarState state(int generator, int hour) const {
    return generator_state[static_cast<std::size_t>(generator) * kHoursPerDay + hour];
  }
};

/// tCO2 of an hourly generation table: sum over hours of
/// sum over generators of MW x CI / 1000, in index order.
HourlyVector hourly_emissions(const GridCase& grid, const HourlyTable& generation);
double total_emissions(const HourlyVector& hourly);

/// Bus x 24 table of the flexible schedules.
HourlyTable flex_demand_table(const GridCase& grid, const LoadShape& shape);

/// Cost-minimising DC-OPF of one day with the flexible loads fixed.
/// Throws InfeasibleError naming the hour, NumericalError if the LP engine
/// cannot certify a solution.
DispatchResult solve_day(const GridCase& grid, const DayScenario& scenario, const LoadShape& flex,
                         const DispatchOptions& options = {});

/// As solve_day, with an arbitrary extra bus x 24 demand table.
DispatchResult solve_day_with_demand(const GridCase& grid, const DayScenario& scenario,
                                     const HourlyTable& extra_demand,
                                     const DispatchOptions& options = {});

/// Emissions change per unit of extra demand at (bus, hour), g/kWh, by
/// re-solving with all other inputs fixed.
double marginal_emissions(const GridCase& grid, const DayScenario& scenario, const std::string& bus,
                          int hour, const DispatchResult& baseline, double epsilon = 1.0,
                          const DispatchOptions& options = {});

/// Generator setting the price at (bus, hour): an interior unit whose bid
/// matches the LMP, else any unit whose bid matches; same bus, then same
/// zone, then lowest index.  -1 when none qualifies.
int marginal_generator(const GridCase& grid, const DispatchResult& result, int bus, int hour,
                       double price_tol = 1e-6);

struct BenchmarkConfig {
  std::vector<double> co2_penalty_sweep = {0, 5, 10, 20, 50, 100, 200, 500};  // $/tCO2
  std::vector<FlexLoadSpec> flex;
  /// Also search the discrete shapes exactly when the hours decouple.
  bool exact_search = true;

  void check() const;
};

struct BenchmarkCandidate {
  std::string source;  // "lambda" or "exact"
  double lambda = 0.0;
  LoadShape shape;
  double emissions = 0.0;  // after economic re-dispatch, tCO2
};

struct BenchmarkResult {
  LoadShape shape;
  DispatchResult dispatch;
  std::vector<BenchmarkCandidate> candidates;
  /// Best over the rounded penalty sweep alone, and over the exact search
  /// (NaN when not run).
  double best_sweep_emissions = 0.0;
  double best_exact_emissions = 0.0;
};

/// CO2-penalised co-optimisation of dispatch and the flexible schedules:
/// every penalty yields a continuous schedule that is rounded to admissible
/// levels and re-dispatched economically; the lowest-emission shape wins.
BenchmarkResult co_optimize_benchmark(const GridCase& grid, const DayScenario& scenario,
                                      const BenchmarkConfig& config,
                                      const DispatchOptions& options = {});

/// Continuous schedule of the penalised co-optimisation for one penalty
/// (flex nodes x 24, MW).
HourlyTable co_optimize_continuous(const GridCase& grid, const DayScenario& scenario,
                                   std::span<const FlexLoadSpec> flex, double lambda,
                                   const DispatchOptions& options = {});

/// Rounds continuous schedules to base +/- delta.  Slots are ranked by
/// deviation, ties by hour then node; the first hours_up (summed over nodes)
/// go up and the last hours_down go down.
LoadShape round_schedule(const HourlyTable& continuous, std::span<const FlexLoadSpec> flex);

}  // namespace gridshift

#endif  // GRIDSHIFT_DISPATCH_HPP
