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

#ifndef GRIDSHIFT_LP_SIMPLEX_HPP
#define GRIDSHIFT_LP_SIMPLEX_HPP

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gridshift/lp/linear_program.hpp"

namespace gridshift::lp {

template <typename Scalar = double>
struct SimplexOptions {
  /// Certification tolerances, applied to the equilibrated problem.
  Scalar tol_feas = Scalar(1e-7);
  Scalar tol_gap = Scalar(1e-6);
  /// Working tolerances of the pivoting rules.
  Scalar tol_primal = Scalar(1e-9);
  Scalar tol_dual = Scalar(1e-9);
  Scalar tol_pivot = Scalar(1e-9);
  /// Consecutive degenerate pivots after which Bland's rule takes over.
  int degenerate_pivots_before_bland = 50;
  int refactor_interval = 128;
  /// 0 selects 50 * (rows + columns) + 1000.
  int max_iterations = 0;
};

namespace detail {

template <typename Scalar>
Scalar nearest_power_of_two(Scalar v) {
  int e = 0;
  const Scalar m = std::frexp(v, &e);  // v = m * 2^e, m in [0.5, 1)
  return m < Scalar(0.7071067811865476) ? std::ldexp(Scalar(1), e - 1) : std::ldexp(Scalar(1), e);
}

/// Working state of one solve: the LP in equilibrated standard form
///   A x = b, lo <= x <= up,
/// with columns [structural | inequality slacks | artificials].
template <typename Scalar>
class SimplexRun {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using RowMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using SparseMatrix = Eigen::SparseMatrix<Scalar, Eigen::ColMajor>;
  using Index = Eigen::Index;

  SimplexRun(const LinearProgram<Scalar>& lp, const SimplexOptions<Scalar>& opt)
      : lp_(lp), opt_(opt) {
    n_struct_ = lp.num_vars();
    n_slack_ = lp.num_ineq();
    m_eq_ = lp.num_eq();
    m_ = m_eq_ + n_slack_;
    n_cols_ = n_struct_ + n_slack_;
    n_total_ = n_cols_ + m_;
    equilibrate();
    max_iterations_ = opt_.max_iterations > 0 ? opt_.max_iterations
                                              : static_cast<int>(50 * (m_ + n_cols_) + 1000);
  }

  LpSolution<Scalar> run(const Basis* warm) {
    LpSolution<Scalar> sol;
    bool started = warm != nullptr && start_from(*warm);
    if (!started) cold_start();

    if (needs_phase_one()) {
      Outcome ph1 = iterate(phase_one_cost_);
      if (ph1 != Outcome::optimal) return failure(sol, "phase one: " + describe(ph1));
      Scalar infeasibility = 0;
      for (Index i = 0; i < m_; ++i) {
        if (is_artificial(head_[i])) infeasibility += std::abs(x_[head_[i]]);
      }
      const Scalar rhs_scale = Scalar(1) + (m_ > 0 ? b_.cwiseAbs().maxCoeff() : Scalar(0));
      if (infeasibility > Scalar(1e-8) * rhs_scale) {
        sol.status = Status::infeasible;
        sol.iterations = iterations_;
        sol.message = "phase one ended with residual infeasibility";
        return sol;
      }
      retire_artificials();
    }

    Outcome ph2 = iterate(cost_);
    if (ph2 == Outcome::unbounded) {
      sol.status = Status::unbounded;
      sol.iterations = iterations_;
      sol.message = "objective unbounded below";
      return sol;
    }
    if (ph2 != Outcome::optimal) return failure(sol, "phase two: " + describe(ph2));
    return finish(sol);
  }

 private:
  enum class Outcome { optimal, unbounded, iteration_limit, singular };

  static constexpr Scalar inf() { return std::numeric_limits<Scalar>::infinity(); }

  static std::string describe(Outcome o) {
    switch (o) {
      case Outcome::optimal: return "optimal";
      case Outcome::unbounded: return "unbounded";
      case Outcome::iteration_limit: return "iteration limit reached";
      case Outcome::singular: return "singular basis";
    }
    return "?";
  }

  bool is_artificial(Index j) const { return j >= n_cols_; }

  void equilibrate() {
    // Row scaling over structural entries, then column scaling; all factors
    // are powers of two so scaling is exact.
    row_scale_ = Vector::Ones(m_);
    col_scale_ = Vector::Ones(n_cols_);
    Vector row_max = Vector::Zero(m_);
    auto scan_rows = [&](const SparseMatrix& mat, Index offset) {
      for (int k = 0; k < mat.outerSize(); ++k) {
        for (typename SparseMatrix::InnerIterator it(mat, k); it; ++it) {
          row_max[offset + it.row()] = std::max(row_max[offset + it.row()], std::abs(it.value()));
        }
      }
    };
    if (m_eq_ > 0) scan_rows(lp_.eq_matrix, 0);
    if (n_slack_ > 0) scan_rows(lp_.ineq_matrix, m_eq_);
    for (Index i = 0; i < m_; ++i) {
      if (row_max[i] > 0) row_scale_[i] = nearest_power_of_two(Scalar(1) / row_max[i]);
    }

    std::vector<Eigen::Triplet<Scalar>> triplets;
    Vector col_max = Vector::Zero(n_struct_);
    auto collect = [&](const SparseMatrix& mat, Index offset) {
      for (int k = 0; k < mat.outerSize(); ++k) {
        for (typename SparseMatrix::InnerIterator it(mat, k); it; ++it) {
          const Index row = offset + it.row();
          const Scalar v = it.value() * row_scale_[row];
          if (v == Scalar(0)) continue;
          col_max[it.col()] = std::max(col_max[it.col()], std::abs(v));
          triplets.emplace_back(row, it.col(), v);
        }
      }
    };
    if (m_eq_ > 0) collect(lp_.eq_matrix, 0);
    if (n_slack_ > 0) collect(lp_.ineq_matrix, m_eq_);
    for (Index j = 0; j < n_struct_; ++j) {
      if (col_max[j] > 0) col_scale_[j] = nearest_power_of_two(Scalar(1) / col_max[j]);
    }
    for (auto& t : triplets) t = Eigen::Triplet<Scalar>(t.row(), t.col(), t.value() * col_scale_[t.col()]);
    // Slack columns keep a unit coefficient: their scale undoes the row scale.
    for (Index k = 0; k < n_slack_; ++k) {
      const Index row = m_eq_ + k;
      col_scale_[n_struct_ + k] = Scalar(1) / row_scale_[row];
      triplets.emplace_back(row, n_struct_ + k, Scalar(1));
    }
    a_.resize(m_, n_cols_);
    a_.setFromTriplets(triplets.begin(), triplets.end());
    a_.makeCompressed();

    b_.resize(m_);
    for (Index i = 0; i < m_eq_; ++i) b_[i] = lp_.eq_rhs[i] * row_scale_[i];
    for (Index k = 0; k < n_slack_; ++k) b_[m_eq_ + k] = lp_.ineq_rhs[k] * row_scale_[m_eq_ + k];

    lo_.resize(n_total_);
    up_.resize(n_total_);
    cost_ = Vector::Zero(n_total_);
    for (Index j = 0; j < n_struct_; ++j) {
      lo_[j] = lp_.lower[j] == -inf() ? -inf() : lp_.lower[j] / col_scale_[j];
      up_[j] = lp_.upper[j] == inf() ? inf() : lp_.upper[j] / col_scale_[j];
      cost_[j] = lp_.objective[j] * col_scale_[j];
    }
    for (Index k = 0; k < n_slack_; ++k) {
      const Index j = n_struct_ + k;
      if (lp_.ineq_sense[k] == Sense::less_equal) {
        lo_[j] = 0;
        up_[j] = inf();
      } else {
        lo_[j] = -inf();
        up_[j] = 0;
      }
    }
    for (Index i = 0; i < m_; ++i) {
      lo_[n_cols_ + i] = 0;
      up_[n_cols_ + i] = 0;
    }
    const Scalar cmax = n_struct_ > 0 ? cost_.head(n_struct_).cwiseAbs().maxCoeff() : Scalar(0);
    obj_scale_ = cmax > 0 ? nearest_power_of_two(Scalar(1) / cmax) : Scalar(1);
    cost_ *= obj_scale_;
    phase_one_cost_ = Vector::Zero(n_total_);
    phase_one_cost_.tail(m_).setOnes();
    art_sign_ = Vector::Ones(m_);
  }

  void place_nonbasic(Index j) {
    if (lo_[j] > -inf()) {
      state_[j] = VarState::at_lower;
      x_[j] = lo_[j];
    } else if (up_[j] < inf()) {
      state_[j] = VarState::at_upper;
      x_[j] = up_[j];
    } else {
      state_[j] = VarState::free_zero;
      x_[j] = 0;
    }
  }

  Vector nonbasic_residual() const {
    Vector r = b_;
    for (Index j = 0; j < n_cols_; ++j) {
      if (state_[j] == VarState::basic || x_[j] == Scalar(0)) continue;
      for (typename SparseMatrix::InnerIterator it(a_, j); it; ++it) r[it.row()] -= it.value() * x_[j];
    }
    return r;
  }

  void cold_start() {
    x_ = Vector::Zero(n_total_);
    state_.assign(n_total_, VarState::at_lower);
    head_.assign(m_, -1);
    for (Index j = 0; j < n_cols_; ++j) place_nonbasic(j);
    for (Index i = 0; i < m_; ++i) {
      lo_[n_cols_ + i] = 0;
      up_[n_cols_ + i] = 0;
      state_[n_cols_ + i] = VarState::at_lower;
      x_[n_cols_ + i] = 0;
    }
    const Vector r = nonbasic_residual();
    binv_ = RowMatrix::Zero(m_, m_);
    for (Index i = 0; i < m_; ++i) {
      if (i >= m_eq_) {
        const Index s = n_struct_ + (i - m_eq_);
        if (r[i] >= lo_[s] && r[i] <= up_[s]) {
          head_[i] = s;
          state_[s] = VarState::basic;
          x_[s] = r[i];
          binv_(i, i) = 1;
          continue;
        }
      }
      const Index art = n_cols_ + i;
      art_sign_[i] = r[i] >= 0 ? Scalar(1) : Scalar(-1);
      up_[art] = inf();
      head_[i] = art;
      state_[art] = VarState::basic;
      x_[art] = std::abs(r[i]);
      binv_(i, i) = art_sign_[i];
    }
    updates_since_refactor_ = 0;
  }

  bool start_from(const Basis& warm) {
    if (static_cast<Index>(warm.state.size()) != n_cols_) return false;
    x_ = Vector::Zero(n_total_);
    state_.assign(n_total_, VarState::at_lower);
    head_.clear();
    for (Index j = 0; j < n_cols_; ++j) {
      const VarState s = warm.state[j];
      state_[j] = s;
      switch (s) {
        case VarState::basic: head_.push_back(j); break;
        case VarState::at_lower:
          if (lo_[j] == -inf()) return false;
          x_[j] = lo_[j];
          break;
        case VarState::at_upper:
          if (up_[j] == inf()) return false;
          x_[j] = up_[j];
          break;
        case VarState::free_zero:
          if (lo_[j] > -inf() || up_[j] < inf()) return false;
          x_[j] = 0;
          break;
      }
    }
    if (static_cast<Index>(head_.size()) != m_) return false;
    if (!refactor()) return false;
    recompute_basics();
    for (Index i = 0; i < m_; ++i) {
      const Index j = head_[i];
      const Scalar slackness = opt_.tol_primal * (Scalar(1) + std::abs(x_[j]));
      if (x_[j] < lo_[j] - slackness || x_[j] > up_[j] + slackness) return false;
    }
    return true;
  }

  bool needs_phase_one() const {
    return std::any_of(head_.begin(), head_.end(), [&](Index j) { return is_artificial(j); });
  }

  template <typename Fn>
  void for_column(Index j, Fn&& fn) const {
    if (j < n_cols_) {
      for (typename SparseMatrix::InnerIterator it(a_, j); it; ++it) fn(it.row(), it.value());
    } else {
      fn(j - n_cols_, art_sign_[j - n_cols_]);
    }
  }

  Vector ftran(Index j) const {
    Vector alpha = Vector::Zero(m_);
    for_column(j, [&](Index row, Scalar v) { alpha.noalias() += binv_.col(row) * v; });
    return alpha;
  }

  bool refactor() {
    updates_since_refactor_ = 0;
    if (m_ == 0) {
      binv_.resize(0, 0);
      return true;
    }
    if (m_ <= 64) {
      Matrix basis = Matrix::Zero(m_, m_);
      for (Index i = 0; i < m_; ++i) {
        for_column(head_[i], [&](Index row, Scalar v) { basis(row, i) = v; });
      }
      Eigen::PartialPivLU<Matrix> lu(basis);
      if (!(lu.rcond() > Scalar(1e-14))) return false;
      binv_ = lu.inverse();
      return true;
    }
    // Larger bases are mostly block structured; a sparse factorization is
    // far cheaper than a dense one.
    std::vector<Eigen::Triplet<Scalar>> triplets;
    for (Index i = 0; i < m_; ++i) {
      for_column(head_[i], [&](Index row, Scalar v) { triplets.emplace_back(row, i, v); });
    }
    SparseMatrix basis(m_, m_);
    basis.setFromTriplets(triplets.begin(), triplets.end());
    basis.makeCompressed();
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(basis);
    lu.factorize(basis);
    if (lu.info() != Eigen::Success) return false;
    const Matrix inverse = lu.solve(Matrix::Identity(m_, m_));
    if (lu.info() != Eigen::Success || !inverse.allFinite()) return false;
    const Matrix check = basis * inverse - Matrix::Identity(m_, m_);
    if (!(check.cwiseAbs().maxCoeff() < Scalar(1e-8))) return false;
    binv_ = inverse;
    return true;
  }

  void recompute_basics() {
    if (m_ == 0) return;
    const Vector r = nonbasic_residual_all();
    const Vector xb = binv_ * r;
    for (Index i = 0; i < m_; ++i) x_[head_[i]] = xb[i];
  }

  // Residual including nonbasic artificials (always zero valued).
  Vector nonbasic_residual_all() const { return nonbasic_residual(); }

  void pivot_inverse(Index r, const Vector& alpha) {
    pivot_row_ = binv_.row(r) / alpha[r];
    for (Index i = 0; i < m_; ++i) {
      if (i != r && alpha[i] != Scalar(0)) binv_.row(i) -= alpha[i] * pivot_row_;
    }
    binv_.row(r) = pivot_row_;
    ++updates_since_refactor_;
  }

  Outcome iterate(const Vector& c) {
    int degenerate_run = 0;
    bool bland = false;
    Vector y(m_);
    Vector cb(m_);
    bool fresh_duals = false;
    for (;;) {
      if (iterations_ >= max_iterations_) return Outcome::iteration_limit;
      if (updates_since_refactor_ >= opt_.refactor_interval) {
        if (!refactor()) return Outcome::singular;
        recompute_basics();
        fresh_duals = false;
      }
      if (!fresh_duals) {
        for (Index i = 0; i < m_; ++i) cb[i] = c[head_[i]];
        y.noalias() = binv_.transpose() * cb;
        fresh_duals = true;
      }

      // Pricing.
      Index q = -1;
      Scalar dq = 0;
      Scalar best = 0;
      for (Index j = 0; j < n_total_; ++j) {
        const VarState s = state_[j];
        if (s == VarState::basic || lo_[j] == up_[j]) continue;
        Scalar d = c[j];
        for_column(j, [&](Index row, Scalar v) { d -= v * y[row]; });
        Scalar score = 0;
        if (s == VarState::at_lower) {
          if (d < -opt_.tol_dual) score = -d;
        } else if (s == VarState::at_upper) {
          if (d > opt_.tol_dual) score = d;
        } else if (std::abs(d) > opt_.tol_dual) {
          score = std::abs(d);
        }
        if (score <= 0) continue;
        if (bland) {
          q = j;
          dq = d;
          break;
        }
        if (score > best) {
          best = score;
          q = j;
          dq = d;
        }
      }
      if (q < 0) {
        if (updates_since_refactor_ == 0) return Outcome::optimal;
        // Confirm optimality against duals recomputed from a fresh inverse.
        if (!refactor()) return Outcome::singular;
        recompute_basics();
        fresh_duals = false;
        continue;
      }

      const Vector alpha = ftran(q);
      const Scalar dir = dq < 0 ? Scalar(1) : Scalar(-1);
      const Scalar range = up_[q] - lo_[q];

      // Harris two-pass ratio test.
      Scalar theta_max = range;
      for (Index i = 0; i < m_; ++i) {
        const Scalar a = dir * alpha[i];
        if (std::abs(a) <= opt_.tol_pivot) continue;
        const Index j = head_[i];
        if (a > 0) {
          if (lo_[j] > -inf()) theta_max = std::min(theta_max, (x_[j] - lo_[j] + opt_.tol_primal) / a);
        } else if (up_[j] < inf()) {
          theta_max = std::min(theta_max, (up_[j] - x_[j] + opt_.tol_primal) / -a);
        }
      }
      if (theta_max == inf()) return Outcome::unbounded;

      Index r = -1;
      Scalar ratio_r = 0;
      Scalar pivot_size = 0;
      for (Index i = 0; i < m_; ++i) {
        const Scalar a = dir * alpha[i];
        if (std::abs(a) <= opt_.tol_pivot) continue;
        const Index j = head_[i];
        Scalar ratio;
        if (a > 0) {
          if (lo_[j] == -inf()) continue;
          ratio = (x_[j] - lo_[j]) / a;
        } else {
          if (up_[j] == inf()) continue;
          ratio = (up_[j] - x_[j]) / -a;
        }
        if (ratio > theta_max) continue;
        bool take;
        if (r < 0) {
          take = true;
        } else if (bland) {
          take = ratio < ratio_r || (ratio == ratio_r && j < head_[r]);
        } else {
          take = std::abs(a) > pivot_size;
        }
        if (take) {
          r = i;
          ratio_r = ratio;
          pivot_size = std::abs(a);
        }
      }

      ++iterations_;
      const bool flip = range <= theta_max && (r < 0 || range <= ratio_r);
      const Scalar step = flip ? range : std::max(ratio_r, Scalar(0));

      if (step <= opt_.tol_primal) {
        if (++degenerate_run > opt_.degenerate_pivots_before_bland) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }

      if (step != Scalar(0)) {
        for (Index i = 0; i < m_; ++i) x_[head_[i]] -= dir * step * alpha[i];
      }
      if (flip) {
        if (dir > 0) {
          state_[q] = VarState::at_upper;
          x_[q] = up_[q];
        } else {
          state_[q] = VarState::at_lower;
          x_[q] = lo_[q];
        }
        continue;
      }
      x_[q] += dir * step;
      const Index leaving = head_[r];
      if (dir * alpha[r] > 0) {
        state_[leaving] = VarState::at_lower;
        x_[leaving] = lo_[leaving];
      } else {
        state_[leaving] = VarState::at_upper;
        x_[leaving] = up_[leaving];
      }
      if (is_artificial(leaving)) {
        // Artificials never re-enter once they leave.
        up_[leaving] = 0;
        lo_[leaving] = 0;
        state_[leaving] = VarState::at_lower;
        x_[leaving] = 0;
      }
      head_[r] = q;
      state_[q] = VarState::basic;
      if (std::abs(alpha[r]) < Scalar(1e-7)) {
        if (!refactor()) return Outcome::singular;
        recompute_basics();
        fresh_duals = false;
      } else {
        pivot_inverse(r, alpha);
        y.noalias() += dq * pivot_row_.transpose();
      }
    }
  }

  // Fix artificials at zero and pivot basic ones out where the row allows.
  void retire_artificials() {
    for (Index i = 0; i < m_; ++i) {
      const Index art = n_cols_ + i;
      lo_[art] = 0;
      up_[art] = 0;
      if (state_[art] != VarState::basic) {
        state_[art] = VarState::at_lower;
        x_[art] = 0;
      }
    }
    for (Index r = 0; r < m_; ++r) {
      if (!is_artificial(head_[r])) continue;
      const auto row = binv_.row(r);
      Index best_j = -1;
      Scalar best = Scalar(1e-7);
      for (Index j = 0; j < n_cols_; ++j) {
        if (state_[j] == VarState::basic) continue;
        Scalar v = 0;
        for (typename SparseMatrix::InnerIterator it(a_, j); it; ++it) v += row[it.row()] * it.value();
        if (std::abs(v) > best) {
          best = std::abs(v);
          best_j = j;
        }
      }
      if (best_j < 0) continue;  // redundant row
      const Vector alpha = ftran(best_j);
      const Index art = head_[r];
      state_[art] = VarState::at_lower;
      x_[art] = 0;
      head_[r] = best_j;
      state_[best_j] = VarState::basic;
      pivot_inverse(r, alpha);
    }
    if (refactor()) recompute_basics();
  }

  LpSolution<Scalar>& failure(LpSolution<Scalar>& sol, const std::string& why) {
    sol.status = Status::numerical_failure;
    sol.iterations = iterations_;
    sol.message = why;
    return sol;
  }

  LpSolution<Scalar> finish(LpSolution<Scalar>& sol) {
    if (!refactor()) return failure(sol, "singular final basis");
    recompute_basics();
    sol.iterations = iterations_;

    Vector cb(m_);
    for (Index i = 0; i < m_; ++i) cb[i] = cost_[head_[i]];
    const Vector y_scaled = m_ > 0 ? Vector(binv_.transpose() * cb) : Vector();

    // Scaled dual feasibility of the final basis.
    for (Index j = 0; j < n_cols_; ++j) {
      const VarState s = state_[j];
      if (s == VarState::basic || lo_[j] == up_[j]) continue;
      Scalar d = cost_[j];
      for (typename SparseMatrix::InnerIterator it(a_, j); it; ++it) d -= it.value() * y_scaled[it.row()];
      const Scalar tol = Scalar(100) * opt_.tol_dual;
      if ((s == VarState::at_lower && d < -tol) || (s == VarState::at_upper && d > tol) ||
          (s == VarState::free_zero && std::abs(d) > tol)) {
        return failure(sol, "final basis is not dual feasible");
      }
    }

    const Index n = n_struct_;
    sol.x.resize(n);
    for (Index j = 0; j < n; ++j) sol.x[j] = x_[j] * col_scale_[j];
    Vector y(m_);
    for (Index i = 0; i < m_; ++i) y[i] = y_scaled[i] * row_scale_[i] / obj_scale_;
    sol.eq_duals = y.head(m_eq_);
    sol.ineq_duals = y.tail(n_slack_);

    // Certification against the unscaled data.
    const Scalar tol = opt_.tol_feas;
    for (Index j = 0; j < n; ++j) {
      const Scalar xj = sol.x[j];
      if (lp_.lower[j] > -inf() && xj < lp_.lower[j] - tol * (Scalar(1) + std::abs(lp_.lower[j]))) {
        return failure(sol, "lower bound violated after solve");
      }
      if (lp_.upper[j] < inf() && xj > lp_.upper[j] + tol * (Scalar(1) + std::abs(lp_.upper[j]))) {
        return failure(sol, "upper bound violated after solve");
      }
    }
    auto row_check = [&](const SparseMatrix& mat, const Vector& rhs, const std::vector<Sense>* sense) {
      Vector ax = Vector::Zero(rhs.size());
      Vector mag = Vector::Zero(rhs.size());
      for (int k = 0; k < mat.outerSize(); ++k) {
        for (typename SparseMatrix::InnerIterator it(mat, k); it; ++it) {
          ax[it.row()] += it.value() * sol.x[it.col()];
          mag[it.row()] = std::max(mag[it.row()], std::abs(it.value() * sol.x[it.col()]));
        }
      }
      for (Index i = 0; i < rhs.size(); ++i) {
        const Scalar scale = Scalar(1) + std::max(std::abs(rhs[i]), mag[i]);
        const Scalar diff = ax[i] - rhs[i];
        Scalar violation = std::abs(diff);
        if (sense != nullptr) {
          violation = (*sense)[i] == Sense::less_equal ? std::max(diff, Scalar(0))
                                                        : std::max(-diff, Scalar(0));
        }
        if (violation > tol * scale) return false;
      }
      return true;
    };
    if (m_eq_ > 0 && !row_check(lp_.eq_matrix, lp_.eq_rhs, nullptr)) {
      return failure(sol, "equality rows violated after solve");
    }
    if (n_slack_ > 0 && !row_check(lp_.ineq_matrix, lp_.ineq_rhs, &lp_.ineq_sense)) {
      return failure(sol, "inequality rows violated after solve");
    }

    // Reduced costs and the dual objective in original units.
    sol.reduced_costs = lp_.objective;
    if (m_eq_ > 0) sol.reduced_costs.noalias() -= lp_.eq_matrix.transpose() * sol.eq_duals;
    if (n_slack_ > 0) sol.reduced_costs.noalias() -= lp_.ineq_matrix.transpose() * sol.ineq_duals;
    sol.objective = lp_.objective.dot(sol.x);
    Scalar dual_objective = 0;
    if (m_eq_ > 0) dual_objective += lp_.eq_rhs.dot(sol.eq_duals);
    if (n_slack_ > 0) dual_objective += lp_.ineq_rhs.dot(sol.ineq_duals);
    for (Index j = 0; j < n; ++j) {
      if (state_[j] == VarState::at_lower) dual_objective += lp_.lower[j] * sol.reduced_costs[j];
      if (state_[j] == VarState::at_upper) dual_objective += lp_.upper[j] * sol.reduced_costs[j];
    }
    // Basic reduced costs are zero up to rounding; their residual is part of the gap.
    Scalar basic_part = 0;
    for (Index j = 0; j < n; ++j) {
      if (state_[j] == VarState::basic) basic_part += sol.reduced_costs[j] * sol.x[j];
    }
    const Scalar gap = sol.objective - dual_objective - basic_part;
    const Scalar obj_mag = Scalar(1) + std::abs(sol.objective);
    if (std::abs(gap) > opt_.tol_gap * obj_mag || std::abs(basic_part) > opt_.tol_gap * obj_mag) {
      return failure(sol, "duality gap above tolerance");
    }

    sol.basis.state.assign(state_.begin(), state_.begin() + n_cols_);
    sol.status = Status::optimal;
    return sol;
  }

  const LinearProgram<Scalar>& lp_;
  const SimplexOptions<Scalar>& opt_;
  Index n_struct_ = 0, n_slack_ = 0, m_eq_ = 0, m_ = 0, n_cols_ = 0, n_total_ = 0;
  SparseMatrix a_;
  Vector b_, lo_, up_, cost_, phase_one_cost_, art_sign_;
  Vector row_scale_, col_scale_;
  Scalar obj_scale_ = 1;
  Vector x_;
  std::vector<VarState> state_;
  std::vector<Index> head_;
  RowMatrix binv_;
  Eigen::Matrix<Scalar, 1, Eigen::Dynamic> pivot_row_;
  int updates_since_refactor_ = 0;
  int iterations_ = 0;
  int max_iterations_ = 0;
};

}  // namespace detail

/// Bounded-variable revised simplex with an explicit basis inverse,
/// Harris ratio test, Dantzig pricing and Bland's rule after a run of
/// degenerate pivots.  Deterministic for identical input.
template <typename Scalar = double>
class SimplexSolver {
 public:
  explicit SimplexSolver(SimplexOptions<Scalar> options = {}) : options_(options) {}

  const SimplexOptions<Scalar>& options() const { return options_; }

  /// Solves lp; a warm-start basis from an LP of the same shape is used when
  /// it is primal feasible, otherwise the solve starts cold.
  LpSolution<Scalar> solve(const LinearProgram<Scalar>& lp, const Basis* warm_start = nullptr) const {
    lp.check();
    detail::SimplexRun<Scalar> run(lp, options_);
    return run.run(warm_start);
  }

 private:
  SimplexOptions<Scalar> options_;
};

template <typename Scalar>
LpSolution<Scalar> solve(const LinearProgram<Scalar>& lp, const Basis* warm_start = nullptr) {
  return SimplexSolver<Scalar>{}.solve(lp, warm_start);
}

}  // namespace gridshift::lp

#endif  // GRIDSHIFT_LP_SIMPLEX_HPP
