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

#ifndef GRIDSHIFT_LP_LINEAR_PROGRAM_HPP
#define GRIDSHIFT_LP_LINEAR_PROGRAM_HPP

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gridshift/common.hpp"

namespace gridshift::lp {

enum class Sense { less_equal, greater_equal };

enum class Status { optimal, infeasible, unbounded, numerical_failure };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    case Status::numerical_failure: return "numerical_failure";
  }
  return "?";
}

/// min objective'x  s.t.  eq_matrix x = eq_rhs,
///                        ineq_matrix x (<= | >=) ineq_rhs,
///                        lower <= x <= upper   (bounds may be infinite).
template <typename Scalar = double>
struct LinearProgram {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using SparseMatrix = Eigen::SparseMatrix<Scalar, Eigen::ColMajor>;

  Vector objective;
  Vector lower;
  Vector upper;
  SparseMatrix eq_matrix;
  Vector eq_rhs;
  SparseMatrix ineq_matrix;
  Vector ineq_rhs;
  std::vector<Sense> ineq_sense;

  static constexpr Scalar infinity() { return std::numeric_limits<Scalar>::infinity(); }

  Eigen::Index num_vars() const { return objective.size(); }
  Eigen::Index num_eq() const { return eq_rhs.size(); }
  Eigen::Index num_ineq() const { return ineq_rhs.size(); }

  /// Throws StructuralError on inconsistent dimensions, inverted bounds or
  /// non-finite coefficients.
  void check() const {
    const Eigen::Index n = num_vars();
    auto fail = [](const std::string& what) { throw StructuralError("linear program: " + what); };
    if (lower.size() != n || upper.size() != n) fail("bound vectors do not match objective");
    if (eq_matrix.rows() != num_eq() || (num_eq() > 0 && eq_matrix.cols() != n)) {
      fail("equality matrix dimensions");
    }
    if (ineq_matrix.rows() != num_ineq() || (num_ineq() > 0 && ineq_matrix.cols() != n)) {
      fail("inequality matrix dimensions");
    }
    if (static_cast<Eigen::Index>(ineq_sense.size()) != num_ineq()) fail("inequality senses");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!std::isfinite(static_cast<double>(objective[j]))) fail("non-finite objective");
      if (std::isnan(static_cast<double>(lower[j])) || std::isnan(static_cast<double>(upper[j])) ||
          lower[j] > upper[j] || lower[j] == infinity() || upper[j] == -infinity()) {
        fail("bounds of variable " + std::to_string(j));
      }
    }
    auto finite_matrix = [&](const SparseMatrix& m, const Vector& rhs, const char* name) {
      for (int k = 0; k < m.outerSize(); ++k) {
        for (typename SparseMatrix::InnerIterator it(m, k); it; ++it) {
          if (!std::isfinite(static_cast<double>(it.value()))) {
            fail(std::string("non-finite ") + name + " coefficient");
          }
        }
      }
      for (Eigen::Index i = 0; i < rhs.size(); ++i) {
        if (!std::isfinite(static_cast<double>(rhs[i]))) fail(std::string("non-finite ") + name + " rhs");
      }
    };
    finite_matrix(eq_matrix, eq_rhs, "equality");
    finite_matrix(ineq_matrix, ineq_rhs, "inequality");
  }
};

/// Position of a variable relative to the basis.
enum class VarState : signed char { basic, at_lower, at_upper, free_zero };

/// Final basis of a solve: one state per structural variable followed by one
/// per inequality slack.  Usable as a warm start for an LP of the same shape.
struct Basis {
  std::vector<VarState> state;
  bool empty() const { return state.empty(); }
};

template <typename Scalar = double>
struct LpSolution {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Status status = Status::numerical_failure;
  Vector x;
  Scalar objective = 0;
  /// d objective / d rhs for each equality row.
  Vector eq_duals;
  /// d objective / d rhs for each inequality row (zero when slack).
  Vector ineq_duals;
  Vector reduced_costs;
  Basis basis;
  int iterations = 0;
  std::string message;

  bool optimal() const { return status == Status::optimal; }
  bool is_basic(Eigen::Index j) const {
    return j < static_cast<Eigen::Index>(basis.state.size()) && basis.state[j] == VarState::basic;
  }
};

}  // namespace gridshift::lp

#endif  // GRIDSHIFT_LP_LINEAR_PROGRAM_HPP
