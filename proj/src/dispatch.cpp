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

#include "gridshift/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace gridshift {

namespace {

constexpr double kBaseMva = 100.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Index view of a validated GridCase.
struct Network {
  int n_gen = 0;
  int n_bus = 0;
  int n_line = 0;
  int slack = 0;
  std::vector<int> gen_bus;
  std::vector<int> line_from;
  std::vector<int> line_to;
  std::vector<double> line_b;  // MW per radian
  std::vector<double> ci;      // g/kWh
  bool has_budgets = false;

  explicit Network(const GridCase& grid) {
    const auto violations = validate_case(grid);
    if (!violations.empty()) {
      std::string msg = "invalid grid case:";
      for (const auto& v : violations) msg += " " + v.entity + ": " + v.rule + ";";
      throw StructuralError(msg);
    }
    n_gen = static_cast<int>(grid.generators.size());
    n_bus = static_cast<int>(grid.buses.size());
    n_line = static_cast<int>(grid.lines.size());
    slack = grid.bus_index(grid.slack_bus);
    for (const auto& g : grid.generators) {
      gen_bus.push_back(grid.bus_index(g.bus));
      ci.push_back(grid.carbon[g.technology]);
    }
    for (const auto& l : grid.lines) {
      line_from.push_back(grid.bus_index(l.from_bus));
      line_to.push_back(grid.bus_index(l.to_bus));
      line_b.push_back(kBaseMva * l.susceptance);
    }
    has_budgets = grid.has_energy_budgets();
  }
};

/// Flexible loads as decision variables of the co-optimisation.
struct FlexVariables {
  std::vector<int> bus;
  std::vector<double> lower;
  std::vector<double> upper;
  double budget = 0.0;
};

/// LP over hours [h0, h0 + hours).  Per hour: outputs, angles, flows; then
/// flexible variables node-major.  Rows per hour: flow definitions, then
/// bus balances; then energy budget rows.
struct DayLp {
  lp::LinearProgram<double> lp;
  int h0 = 0;
  int hours = 0;
  int stride = 0;
  int rows_per_hour = 0;
  int flex_offset = 0;
  int n_flex = 0;
  int flex_budget_row = -1;
  std::vector<int> budget_generators;

  int p(int g, int h) const { return (h - h0) * stride + g; }
  int flow_var(const Network& net, int l, int h) const { return (h - h0) * stride + net.n_gen + net.n_bus + l; }
  int flex_var(int n, int h) const { return flex_offset + n * hours + (h - h0); }
  int balance_row(const Network& net, int b, int h) const { return (h - h0) * rows_per_hour + net.n_line + b; }
};

DayLp build_lp(const GridCase& grid, const Network& net, const HourlyTable& demand,
               const HourlyTable& availability, int h0, int hours, const FlexVariables* flex,
               double lambda) {
  DayLp d;
  d.h0 = h0;
  d.hours = hours;
  d.stride = net.n_gen + net.n_bus + net.n_line;
  d.rows_per_hour = net.n_line + net.n_bus;
  d.n_flex = flex ? static_cast<int>(flex->bus.size()) : 0;
  d.flex_offset = hours * d.stride;
  const int n_vars = d.flex_offset + d.n_flex * hours;

  auto& lp = d.lp;
  lp.objective = Eigen::VectorXd::Zero(n_vars);
  lp.lower = Eigen::VectorXd::Zero(n_vars);
  lp.upper = Eigen::VectorXd::Zero(n_vars);

  const bool whole_day = hours == kHoursPerDay;
  if (whole_day) {
    for (int g = 0; g < net.n_gen; ++g) {
      if (grid.generators[g].daily_energy_budget) d.budget_generators.push_back(g);
    }
  }
  int n_eq = hours * d.rows_per_hour + (flex ? 1 : 0);
  std::vector<Eigen::Triplet<double>> eq;
  lp.eq_rhs = Eigen::VectorXd::Zero(n_eq);

  for (int h = h0; h < h0 + hours; ++h) {
    for (int g = 0; g < net.n_gen; ++g) {
      const auto& gen = grid.generators[g];
      const int j = d.p(g, h);
      const double cap = availability(g, h) * gen.p_max;
      lp.objective[j] = gen.bid_price + lambda * net.ci[g] / 1000.0;
      lp.lower[j] = std::min(gen.p_min, cap);
      lp.upper[j] = cap;
      eq.emplace_back(d.balance_row(net, net.gen_bus[g], h), j, 1.0);
    }
    for (int b = 0; b < net.n_bus; ++b) {
      const int j = (h - h0) * d.stride + net.n_gen + b;
      lp.lower[j] = b == net.slack ? 0.0 : -kInf;
      lp.upper[j] = b == net.slack ? 0.0 : kInf;
      lp.eq_rhs[d.balance_row(net, b, h)] = demand(b, h);
    }
    for (int l = 0; l < net.n_line; ++l) {
      const int j = d.flow_var(net, l, h);
      const double limit = grid.lines[l].flow_limit;
      lp.lower[j] = -limit;
      lp.upper[j] = limit;
      const int row = (h - h0) * d.rows_per_hour + l;
      const int theta0 = (h - h0) * d.stride + net.n_gen;
      eq.emplace_back(row, j, 1.0);
      eq.emplace_back(row, theta0 + net.line_from[l], -net.line_b[l]);
      eq.emplace_back(row, theta0 + net.line_to[l], net.line_b[l]);
      eq.emplace_back(d.balance_row(net, net.line_from[l], h), j, -1.0);
      eq.emplace_back(d.balance_row(net, net.line_to[l], h), j, 1.0);
    }
  }
  if (flex) {
    d.flex_budget_row = n_eq - 1;
    lp.eq_rhs[d.flex_budget_row] = flex->budget;
    for (int n = 0; n < d.n_flex; ++n) {
      for (int h = h0; h < h0 + hours; ++h) {
        const int j = d.flex_var(n, h);
        lp.lower[j] = flex->lower[n];
        lp.upper[j] = flex->upper[n];
        eq.emplace_back(d.balance_row(net, flex->bus[n], h), j, -1.0);
        eq.emplace_back(d.flex_budget_row, j, 1.0);
      }
    }
  }
  lp.eq_matrix.resize(n_eq, n_vars);
  lp.eq_matrix.setFromTriplets(eq.begin(), eq.end());

  const int n_in = static_cast<int>(d.budget_generators.size());
  std::vector<Eigen::Triplet<double>> in;
  lp.ineq_rhs = Eigen::VectorXd::Zero(n_in);
  for (int k = 0; k < n_in; ++k) {
    const int g = d.budget_generators[k];
    for (int h = h0; h < h0 + hours; ++h) in.emplace_back(k, d.p(g, h), 1.0);
    lp.ineq_rhs[k] = *grid.generators[g].daily_energy_budget;
  }
  lp.ineq_matrix.resize(n_in, n_vars);
  lp.ineq_matrix.setFromTriplets(in.begin(), in.end());
  lp.ineq_sense.assign(static_cast<std::size_t>(n_in), lp::Sense::less_equal);
  return d;
}

/// Copies one solved LP block into the result tables.
void extract(const GridCase& grid, const Network& net, const DayLp& d, const lp::LpSolution<double>& sol,
             DispatchResult& out) {
  for (int h = d.h0; h < d.h0 + d.hours; ++h) {
    for (int g = 0; g < net.n_gen; ++g) {
      const int j = d.p(g, h);
      const double v = std::clamp(sol.x[j], d.lp.lower[j], d.lp.upper[j]);
      out.generation(g, h) = v;
      out.generator_state[static_cast<std::size_t>(g) * kHoursPerDay + h] = sol.basis.state[j];
      if (is_intermittent(grid.generators[g].technology)) out.curtailment(g, h) = d.lp.upper[j] - v;
    }
    for (int b = 0; b < net.n_bus; ++b) out.lmp(b, h) = sol.eq_duals[d.balance_row(net, b, h)];
    for (int l = 0; l < net.n_line; ++l) out.flow(l, h) = sol.x[d.flow_var(net, l, h)];
  }
}

[[noreturn]] void raise(const lp::LpSolution<double>& sol, const std::string& date, int hour) {
  const std::string where = "day " + date + (hour >= 0 ? " hour " + std::to_string(hour) : "");
  if (sol.status == lp::Status::infeasible) {
    throw InfeasibleError(where + ": demand cannot be served", hour);
  }
  if (sol.status == lp::Status::unbounded) {
    throw NumericalError(where + ": dispatch LP unbounded");
  }
  throw NumericalError(where + ": " + sol.message);
}

void finalize(const GridCase& grid, const Network& net, DispatchResult& out) {
  out.hourly_emissions = hourly_emissions(grid, out.generation);
  out.emissions = total_emissions(out.hourly_emissions);
  out.cost = 0.0;
  for (int g = 0; g < net.n_gen; ++g) {
    for (int h = 0; h < kHoursPerDay; ++h) out.cost += grid.generators[g].bid_price * out.generation(g, h);
  }
  out.load_payment = 0.0;
  for (int b = 0; b < net.n_bus; ++b) {
    for (int h = 0; h < kHoursPerDay; ++h) out.load_payment += out.lmp(b, h) * out.bus_demand(b, h);
  }
  out.demand = out.bus_demand.colwise().sum().transpose();
  out.renewables.setZero();
  out.available_renewables.setZero();
  for (int g = 0; g < net.n_gen; ++g) {
    if (!is_intermittent(grid.generators[g].technology)) continue;
    out.renewables += out.generation.row(g).transpose();
  }
}

lp::SimplexSolver<double> solver_for(const DispatchOptions& options) {
  return lp::SimplexSolver<double>(options.simplex);
}

/// Economic dispatch with a complete bus x 24 demand table.
DispatchResult dispatch_total(const GridCase& grid, const Network& net, const DayScenario& scenario,
                              const HourlyTable& demand, const DispatchOptions& options) {
  DispatchResult out;
  out.date = scenario.date;
  out.generation = HourlyTable::Zero(net.n_gen, kHoursPerDay);
  out.curtailment = HourlyTable::Zero(net.n_gen, kHoursPerDay);
  out.lmp = HourlyTable::Zero(net.n_bus, kHoursPerDay);
  out.flow = HourlyTable::Zero(net.n_line, kHoursPerDay);
  out.bus_demand = demand;
  out.generator_state.assign(static_cast<std::size_t>(net.n_gen) * kHoursPerDay, lp::VarState::at_lower);
  const auto solver = solver_for(options);

  if (!net.has_budgets) {
    // Without energy budgets the day separates into independent hours.
    for (int h = 0; h < kHoursPerDay; ++h) {
      const DayLp d = build_lp(grid, net, demand, scenario.availability, h, 1, nullptr, 0.0);
      const auto sol = solver.solve(d.lp);
      if (!sol.optimal()) raise(sol, scenario.date, h);
      extract(grid, net, d, sol, out);
    }
  } else {
    const DayLp d = build_lp(grid, net, demand, scenario.availability, 0, kHoursPerDay, nullptr, 0.0);
    const auto sol = solver.solve(d.lp);
    if (!sol.optimal()) {
      int hour = -1;
      if (sol.status == lp::Status::infeasible) {
        for (int h = 0; h < kHoursPerDay && hour < 0; ++h) {
          const DayLp one = build_lp(grid, net, demand, scenario.availability, h, 1, nullptr, 0.0);
          if (solver.solve(one.lp).status == lp::Status::infeasible) hour = h;
        }
      }
      raise(sol, scenario.date, hour);
    }
    extract(grid, net, d, sol, out);
  }
  finalize(grid, net, out);
  for (int g = 0; g < net.n_gen; ++g) {
    if (!is_intermittent(grid.generators[g].technology)) continue;
    out.available_renewables += (scenario.availability.row(g) * grid.generators[g].p_max).transpose();
  }
  return out;
}

/// Emissions of one hour dispatched economically with the given bus demand.
double hour_emissions(const GridCase& grid, const Network& net, const DayScenario& scenario,
                      const HourlyTable& demand, int hour, const DispatchOptions& options,
                      bool& feasible) {
  const DayLp d = build_lp(grid, net, demand, scenario.availability, hour, 1, nullptr, 0.0);
  const auto sol = solver_for(options).solve(d.lp);
  if (sol.status == lp::Status::infeasible) {
    feasible = false;
    return kInf;
  }
  if (!sol.optimal()) raise(sol, scenario.date, hour);
  feasible = true;
  double e = 0.0;
  for (int g = 0; g < net.n_gen; ++g) {
    const int j = d.p(g, hour);
    e += std::clamp(sol.x[j], d.lp.lower[j], d.lp.upper[j]) * net.ci[g] / 1000.0;
  }
  return e;
}

void check_flex(const GridCase& grid, std::span<const FlexLoadSpec> flex) {
  for (const auto& f : flex) {
    f.check();
    if (grid.bus_index(f.bus) < 0) throw ConfigError("flexible load bus '" + f.bus + "' is not in the case");
  }
}

}  // namespace

void DayScenario::check(const GridCase& grid) const {
  const auto n_bus = static_cast<Eigen::Index>(grid.buses.size());
  const auto n_gen = static_cast<Eigen::Index>(grid.generators.size());
  if (bus_demand.rows() != n_bus) {
    throw StructuralError("day " + date + ": demand has " + std::to_string(bus_demand.rows()) +
                          " buses, case has " + std::to_string(n_bus));
  }
  if (availability.rows() != n_gen) {
    throw StructuralError("day " + date + ": availability has " + std::to_string(availability.rows()) +
                          " generators, case has " + std::to_string(n_gen));
  }
  for (Eigen::Index b = 0; b < n_bus; ++b) {
    for (int h = 0; h < kHoursPerDay; ++h) {
      if (!(bus_demand(b, h) >= 0.0) || !std::isfinite(bus_demand(b, h))) {
        throw StructuralError("day " + date + ": demand at " + grid.buses[b].id + " hour " +
                              std::to_string(h) + " must be finite and >= 0");
      }
    }
  }
  for (Eigen::Index g = 0; g < n_gen; ++g) {
    for (int h = 0; h < kHoursPerDay; ++h) {
      const double a = availability(g, h);
      if (!(a >= 0.0 && a <= 1.0)) {
        throw StructuralError("day " + date + ": availability of " + grid.generators[g].id + " hour " +
                              std::to_string(h) + " outside [0,1]");
      }
    }
  }
}

HourlyVector hourly_emissions(const GridCase& grid, const HourlyTable& generation) {
  HourlyVector out = HourlyVector::Zero();
  for (int h = 0; h < kHoursPerDay; ++h) {
    double e = 0.0;
    for (Eigen::Index g = 0; g < generation.rows(); ++g) {
      e += generation(g, h) * grid.carbon[grid.generators[g].technology] / 1000.0;
    }
    out[h] = e;
  }
  return out;
}

double total_emissions(const HourlyVector& hourly) {
  double total = 0.0;
  for (int h = 0; h < kHoursPerDay; ++h) total += hourly[h];
  return total;
}

HourlyTable flex_demand_table(const GridCase& grid, const LoadShape& shape) {
  HourlyTable out = HourlyTable::Zero(static_cast<Eigen::Index>(grid.buses.size()), kHoursPerDay);
  for (const auto& node : shape.nodes()) {
    const int b = grid.bus_index(node.bus);
    if (b < 0) throw ConfigError("flexible load bus '" + node.bus + "' is not in the case");
    for (int h = 0; h < kHoursPerDay; ++h) out(b, h) += node.mw[h];
  }
  return out;
}

DispatchResult solve_day_with_demand(const GridCase& grid, const DayScenario& scenario,
                                     const HourlyTable& extra_demand, const DispatchOptions& options) {
  const Network net(grid);
  scenario.check(grid);
  if (extra_demand.rows() != net.n_bus) throw StructuralError("extra demand table has wrong bus count");
  return dispatch_total(grid, net, scenario, scenario.bus_demand + extra_demand, options);
}

DispatchResult solve_day(const GridCase& grid, const DayScenario& scenario, const LoadShape& flex,
                         const DispatchOptions& options) {
  return solve_day_with_demand(grid, scenario, flex_demand_table(grid, flex), options);
}

double marginal_emissions(const GridCase& grid, const DayScenario& scenario, const std::string& bus,
                          int hour, const DispatchResult& baseline, double epsilon,
                          const DispatchOptions& options) {
  if (!(epsilon > 0.0)) throw ConfigError("marginal emissions epsilon must be > 0");
  if (hour < 0 || hour >= kHoursPerDay) throw ConfigError("hour out of range");
  const Network net(grid);
  const int b = grid.bus_index(bus);
  if (b < 0) throw ConfigError("unknown bus '" + bus + "'");
  HourlyTable demand = baseline.bus_demand;
  demand(b, hour) += epsilon;
  if (!net.has_budgets) {
    bool feasible = false;
    const double e = hour_emissions(grid, net, scenario, demand, hour, options, feasible);
    if (!feasible) {
      throw InfeasibleError("day " + scenario.date + " hour " + std::to_string(hour) +
                                ": no headroom for extra demand at " + bus,
                            hour);
    }
    return (e - baseline.hourly_emissions[hour]) * 1000.0 / epsilon;
  }
  const DispatchResult perturbed = dispatch_total(grid, net, scenario, demand, options);
  return (perturbed.emissions - baseline.emissions) * 1000.0 / epsilon;
}

int marginal_generator(const GridCase& grid, const DispatchResult& result, int bus, int hour,
                       double price_tol) {
  const double price = result.lmp(bus, hour);
  const std::string& zone = grid.buses[bus].zone;
  auto pick = [&](bool interior_only) {
    int best = -1;
    int best_rank = 3;
    for (std::size_t g = 0; g < grid.generators.size(); ++g) {
      const auto& gen = grid.generators[g];
      if (std::abs(gen.bid_price - price) > price_tol) continue;
      if (interior_only && result.state(static_cast<int>(g), hour) != lp::VarState::basic) continue;
      const int gb = grid.bus_index(gen.bus);
      const int rank = gb == bus ? 0 : (grid.buses[gb].zone == zone ? 1 : 2);
      if (rank < best_rank) {
        best_rank = rank;
        best = static_cast<int>(g);
      }
    }
    return best;
  };
  const int interior = pick(true);
  return interior >= 0 ? interior : pick(false);
}

void BenchmarkConfig::check() const {
  if (co2_penalty_sweep.empty()) throw ConfigError("benchmark penalty sweep is empty");
  for (double l : co2_penalty_sweep) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw ConfigError("benchmark penalties must be finite and >= 0");
  }
  if (flex.empty() || flex.size() > 2) throw ConfigError("benchmark needs one or two flexible loads");
  for (const auto& f : flex) {
    f.check();
    if (f.delta != flex.front().delta) throw ConfigError("flexible loads must share delta");
  }
}

LoadShape round_schedule(const HourlyTable& continuous, std::span<const FlexLoadSpec> flex) {
  const int nodes = static_cast<int>(flex.size());
  if (continuous.rows() != nodes) throw StructuralError("continuous schedule has wrong node count");
  struct Slot {
    int node;
    int hour;
    double dev;
  };
  std::vector<Slot> slots;
  int ups = 0;
  int downs = 0;
  for (const auto& f : flex) {
    ups += f.hours_up;
    downs += f.hours_down;
  }
  // Slot order is (hour, node); stable sorts keep it for ties.
  for (int h = 0; h < kHoursPerDay; ++h) {
    for (int n = 0; n < nodes; ++n) slots.push_back({n, h, continuous(n, h) - flex[n].base});
  }
  std::vector<NodeSchedule> schedules(static_cast<std::size_t>(nodes));
  for (int n = 0; n < nodes; ++n) {
    schedules[n].bus = flex[n].bus;
    schedules[n].mw.fill(flex[n].base);
  }
  // One ranking: the first ups slots go up, the last downs slots go down.
  std::vector<Slot> ranked = slots;
  std::stable_sort(ranked.begin(), ranked.end(), [](const Slot& a, const Slot& b) { return a.dev > b.dev; });
  for (int k = 0; k < ups; ++k) {
    const Slot& s = ranked[k];
    schedules[s.node].mw[s.hour] = flex[s.node].high();
  }
  for (int k = 0; k < downs; ++k) {
    const Slot& s = ranked[ranked.size() - 1 - k];
    schedules[s.node].mw[s.hour] = flex[s.node].low();
  }
  return LoadShape::make(flex, std::move(schedules));
}

HourlyTable co_optimize_continuous(const GridCase& grid, const DayScenario& scenario,
                                   std::span<const FlexLoadSpec> flex, double lambda,
                                   const DispatchOptions& options) {
  const Network net(grid);
  scenario.check(grid);
  check_flex(grid, flex);
  FlexVariables vars;
  for (const auto& f : flex) {
    vars.bus.push_back(grid.bus_index(f.bus));
    vars.lower.push_back(f.low());
    vars.upper.push_back(f.high());
    vars.budget += static_cast<double>(f.base) * kHoursPerDay;
  }
  const DayLp d = build_lp(grid, net, scenario.bus_demand, scenario.availability, 0, kHoursPerDay, &vars, lambda);
  const auto sol = solver_for(options).solve(d.lp);
  if (!sol.optimal()) raise(sol, scenario.date, -1);
  HourlyTable out(static_cast<Eigen::Index>(flex.size()), kHoursPerDay);
  for (int n = 0; n < d.n_flex; ++n) {
    for (int h = 0; h < kHoursPerDay; ++h) out(n, h) = sol.x[d.flex_var(n, h)];
  }
  return out;
}

BenchmarkResult co_optimize_benchmark(const GridCase& grid, const DayScenario& scenario,
                                      const BenchmarkConfig& config, const DispatchOptions& options) {
  config.check();
  const Network net(grid);
  scenario.check(grid);
  const std::span<const FlexLoadSpec> flex(config.flex);
  check_flex(grid, flex);
  const int nodes = static_cast<int>(flex.size());

  FlexVariables vars;
  for (const auto& f : flex) {
    vars.bus.push_back(grid.bus_index(f.bus));
    vars.lower.push_back(f.low());
    vars.upper.push_back(f.high());
    vars.budget += static_cast<double>(f.base) * kHoursPerDay;
  }

  BenchmarkResult result{LoadShape::flat(flex), {}, {}, kInf, std::numeric_limits<double>::quiet_NaN()};
  std::vector<std::pair<LoadShape, DispatchResult>> evaluated;
  auto evaluate = [&](const LoadShape& shape) -> const DispatchResult& {
    for (const auto& e : evaluated) {
      if (e.first == shape) return e.second;
    }
    evaluated.emplace_back(shape, dispatch_total(grid, net, scenario,
                                                 scenario.bus_demand + flex_demand_table(grid, shape), options));
    return evaluated.back().second;
  };

  const auto solver = solver_for(options);
  lp::Basis basis;
  for (double lambda : config.co2_penalty_sweep) {
    const DayLp d = build_lp(grid, net, scenario.bus_demand, scenario.availability, 0, kHoursPerDay, &vars, lambda);
    const auto sol = solver.solve(d.lp, basis.empty() ? nullptr : &basis);
    if (!sol.optimal()) raise(sol, scenario.date, -1);
    basis = sol.basis;
    HourlyTable continuous(nodes, kHoursPerDay);
    for (int n = 0; n < nodes; ++n) {
      for (int h = 0; h < kHoursPerDay; ++h) continuous(n, h) = sol.x[d.flex_var(n, h)];
    }
    LoadShape shape = round_schedule(continuous, flex);
    const double e = evaluate(shape).emissions;
    result.candidates.push_back({"lambda", lambda, shape, e});
    result.best_sweep_emissions = std::min(result.best_sweep_emissions, e);
  }

  if (config.exact_search && !net.has_budgets) {
    // Exact search over admissible shapes: per-hour emissions of every
    // level combination, then a DP over hours on the up/down counts.
    int combos = 1;
    for (int n = 0; n < nodes; ++n) combos *= 3;
    int total_up = 0;
    int total_down = 0;
    for (const auto& f : flex) {
      total_up += f.hours_up;
      total_down += f.hours_down;
    }
    // combo digit per node: 0 = low, 1 = base, 2 = high.
    std::vector<int> combo_up(combos, 0);
    std::vector<int> combo_down(combos, 0);
    std::vector<std::vector<int>> combo_level(combos, std::vector<int>(nodes));
    for (int c = 0; c < combos; ++c) {
      int code = c;
      for (int n = 0; n < nodes; ++n) {
        const int digit = code % 3;
        code /= 3;
        combo_level[c][n] = digit;
        combo_up[c] += digit == 2;
        combo_down[c] += digit == 0;
      }
    }
    std::vector<std::vector<double>> e(kHoursPerDay, std::vector<double>(combos, kInf));
    HourlyTable demand = scenario.bus_demand;
    for (int h = 0; h < kHoursPerDay; ++h) {
      for (int c = 0; c < combos; ++c) {
        HourlyTable hour_demand = demand;
        for (int n = 0; n < nodes; ++n) {
          const int level = combo_level[c][n];
          hour_demand(vars.bus[n], h) +=
              level == 0 ? flex[n].low() : (level == 1 ? flex[n].base : flex[n].high());
        }
        bool feasible = false;
        const double v = hour_emissions(grid, net, scenario, hour_demand, h, options, feasible);
        e[h][c] = feasible ? v : kInf;
      }
    }
    const int U = total_up + 1;
    const int D = total_down + 1;
    // best[h][u][d]: minimum emissions of hours h..23 needing u ups, d downs.
    std::vector<double> best(static_cast<std::size_t>((kHoursPerDay + 1) * U * D), kInf);
    std::vector<int> choice(static_cast<std::size_t>(kHoursPerDay * U * D), -1);
    auto at = [&](int h, int u, int d) { return static_cast<std::size_t>((h * U + u) * D + d); };
    best[at(kHoursPerDay, 0, 0)] = 0.0;
    for (int h = kHoursPerDay - 1; h >= 0; --h) {
      for (int u = 0; u < U; ++u) {
        for (int d = 0; d < D; ++d) {
          for (int c = 0; c < combos; ++c) {
            if (combo_up[c] > u || combo_down[c] > d || e[h][c] == kInf) continue;
            const double rest = best[at(h + 1, u - combo_up[c], d - combo_down[c])];
            if (rest == kInf) continue;
            const double v = e[h][c] + rest;
            if (v < best[at(h, u, d)]) {
              best[at(h, u, d)] = v;
              choice[at(h, u, d)] = c;
            }
          }
        }
      }
    }
    if (best[at(0, total_up, total_down)] < kInf) {
      std::vector<NodeSchedule> schedules(static_cast<std::size_t>(nodes));
      for (int n = 0; n < nodes; ++n) schedules[n].bus = flex[n].bus;
      int u = total_up;
      int dn = total_down;
      for (int h = 0; h < kHoursPerDay; ++h) {
        const int c = choice[at(h, u, dn)];
        for (int n = 0; n < nodes; ++n) {
          const int level = combo_level[c][n];
          schedules[n].mw[h] = level == 0 ? flex[n].low() : (level == 1 ? flex[n].base : flex[n].high());
        }
        u -= combo_up[c];
        dn -= combo_down[c];
      }
      LoadShape shape = LoadShape::make(flex, std::move(schedules));
      const double em = evaluate(shape).emissions;
      result.candidates.push_back({"exact", std::numeric_limits<double>::quiet_NaN(), shape, em});
      result.best_exact_emissions = em;
    }
  }

  std::size_t pick = 0;
  for (std::size_t k = 1; k < result.candidates.size(); ++k) {
    if (result.candidates[k].emissions < result.candidates[pick].emissions) pick = k;
  }
  result.shape = result.candidates[pick].shape;
  result.dispatch = evaluate(result.shape);
  return result;
}

}  // namespace gridshift
