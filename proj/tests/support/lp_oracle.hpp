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

#ifndef GRIDSHIFT_TESTS_LP_ORACLE_HPP
#define GRIDSHIFT_TESTS_LP_ORACLE_HPP

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "gridshift/lp/linear_program.hpp"

namespace gridshift::testing {

/// Optimum of a bounded LP by enumerating every basic solution: each choice of
/// n linearly independent active constraints (equalities always active).
/// Returns nullopt when no vertex is feasible.
inline std::optional<double> vertex_enumeration_optimum(const lp::LinearProgram<double>& lp,
                                                        double tol = 1e-9) {
  const Eigen::Index n = lp.num_vars();
  const Eigen::MatrixXd eq = Eigen::MatrixXd(lp.eq_matrix);
  const Eigen::MatrixXd in = Eigen::MatrixXd(lp.ineq_matrix);
  // Candidate active rows: inequalities and finite bounds, as (row, rhs).
  std::vector<Eigen::RowVectorXd> rows;
  std::vector<double> rhs;
  for (Eigen::Index i = 0; i < lp.num_ineq(); ++i) {
    rows.push_back(in.row(i));
    rhs.push_back(lp.ineq_rhs[i]);
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::RowVectorXd e = Eigen::RowVectorXd::Zero(n);
    e[j] = 1;
    if (std::isfinite(lp.lower[j])) {
      rows.push_back(e);
      rhs.push_back(lp.lower[j]);
    }
    if (std::isfinite(lp.upper[j])) {
      rows.push_back(e);
      rhs.push_back(lp.upper[j]);
    }
  }
  // Redundant equality rows do not fix a direction, so count by rank.
  const Eigen::Index eq_rank = lp.num_eq() > 0 ? Eigen::FullPivLU<Eigen::MatrixXd>(eq).rank() : 0;
  const Eigen::Index need = n - eq_rank;
  auto feasible = [&](const Eigen::VectorXd& x) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (x[j] < lp.lower[j] - tol * (1 + std::abs(lp.lower[j]))) return false;
      if (x[j] > lp.upper[j] + tol * (1 + std::abs(lp.upper[j]))) return false;
    }
    for (Eigen::Index i = 0; i < lp.num_eq(); ++i) {
      if (std::abs(eq.row(i).dot(x) - lp.eq_rhs[i]) > tol * (1 + std::abs(lp.eq_rhs[i]))) return false;
    }
    for (Eigen::Index i = 0; i < lp.num_ineq(); ++i) {
      const double v = in.row(i).dot(x) - lp.ineq_rhs[i];
      const double t = tol * (1 + std::abs(lp.ineq_rhs[i]));
      if (lp.ineq_sense[i] == lp::Sense::less_equal ? v > t : v < -t) return false;
    }
    return true;
  };

  std::optional<double> best;
  const int m = static_cast<int>(rows.size());
  std::vector<int> pick(static_cast<std::size_t>(need));
  for (Eigen::Index k = 0; k < need; ++k) pick[k] = static_cast<int>(k);
  if (need > m) return std::nullopt;
  Eigen::MatrixXd system(lp.num_eq() + need, n);
  Eigen::VectorXd b(lp.num_eq() + need);
  for (;;) {
    system.topRows(lp.num_eq()) = eq;
    b.head(lp.num_eq()) = lp.eq_rhs;
    for (Eigen::Index k = 0; k < need; ++k) {
      system.row(lp.num_eq() + k) = rows[pick[k]];
      b[lp.num_eq() + k] = rhs[pick[k]];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(system);
    if (n == 0 || qr.rank() == n) {
      const Eigen::VectorXd x = n == 0 ? Eigen::VectorXd() : Eigen::VectorXd(qr.solve(b));
      if (feasible(x)) {
        const double obj = lp.objective.dot(x);
        if (!best || obj < *best) best = obj;
      }
    }
    // Next combination.
    Eigen::Index k = need - 1;
    while (k >= 0 && pick[k] == m - need + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (Eigen::Index t = k + 1; t < need; ++t) pick[t] = pick[t - 1] + 1;
  }
  return best;
}

/// Dual objective b'y + sum of bound terms, from the reported duals.
inline double dual_objective(const lp::LinearProgram<double>& lp, const lp::LpSolution<double>& s) {
  Eigen::VectorXd d = lp.objective;
  double value = 0;
  if (lp.num_eq() > 0) {
    d -= Eigen::MatrixXd(lp.eq_matrix).transpose() * s.eq_duals;
    value += lp.eq_rhs.dot(s.eq_duals);
  }
  if (lp.num_ineq() > 0) {
    d -= Eigen::MatrixXd(lp.ineq_matrix).transpose() * s.ineq_duals;
    value += lp.ineq_rhs.dot(s.ineq_duals);
  }
  for (Eigen::Index j = 0; j < lp.num_vars(); ++j) {
    if (d[j] > 0) value += d[j] * lp.lower[j];
    if (d[j] < 0) value += d[j] * lp.upper[j];
  }
  return value;
}

/// Random bounded LP with at most max_vars variables and max_rows rows.
inline lp::LinearProgram<double> random_lp(std::mt19937_64& rng, int max_vars = 6, int max_rows = 8) {
  std::uniform_int_distribution<int> nvar(1, max_vars);
  std::uniform_int_distribution<int> nrow(1, max_rows);
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = nvar(rng);
  const int rows = nrow(rng);
  int n_eq = std::uniform_int_distribution<int>(0, std::min(rows, std::max(0, n - 1)))(rng);
  const int n_in = rows - n_eq;
  lp::LinearProgram<double> lp;
  lp.objective.resize(n);
  lp.lower.resize(n);
  lp.upper.resize(n);
  for (int j = 0; j < n; ++j) {
    lp.objective[j] = coef(rng);
    lp.lower[j] = -std::uniform_int_distribution<int>(0, 3)(rng);
    lp.upper[j] = lp.lower[j] + std::uniform_int_distribution<int>(1, 8)(rng);
  }
  // A point inside the box makes most instances feasible; some rhs are
  // perturbed away from it so infeasible instances also occur.
  Eigen::VectorXd x0(n);
  for (int j = 0; j < n; ++j) x0[j] = lp.lower[j] + unit(rng) * (lp.upper[j] - lp.lower[j]);
  auto fill = [&](int count, Eigen::SparseMatrix<double>& mat, Eigen::VectorXd& rhs, bool equality) {
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(count, n);
    rhs.resize(count);
    for (int i = 0; i < count; ++i) {
      for (int j = 0; j < n; ++j) {
        if (unit(rng) < 0.7) dense(i, j) = coef(rng);
      }
      double v = dense.row(i).dot(x0);
      if (equality) {
        rhs[i] = std::round(v);
      } else {
        rhs[i] = std::round(v + (unit(rng) < 0.15 ? -12.0 : 3.0 * unit(rng)));
      }
    }
    mat = dense.sparseView();
    mat.resize(count, n);
    mat = dense.sparseView();
  };
  fill(n_eq, lp.eq_matrix, lp.eq_rhs, true);
  fill(n_in, lp.ineq_matrix, lp.ineq_rhs, false);
  lp.ineq_sense.assign(static_cast<std::size_t>(n_in), lp::Sense::less_equal);
  for (int i = 0; i < n_in; ++i) {
    if (unit(rng) < 0.4) {
      // Flip to >= by negating the row.
      lp.ineq_sense[i] = lp::Sense::greater_equal;
    }
  }
  for (int i = 0; i < n_in; ++i) {
    if (lp.ineq_sense[i] == lp::Sense::greater_equal) {
      lp.ineq_matrix.row(i) *= -1.0;
      lp.ineq_rhs[i] = -lp.ineq_rhs[i];
    }
  }
  return lp;
}

}  // namespace gridshift::testing

#endif  // GRIDSHIFT_TESTS_LP_ORACLE_HPP
