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

#include "doctest.h"

#include <random>
#include <sstream>

#include "gridshift/lp/lp_text.hpp"
#include "gridshift/lp/simplex.hpp"
#include "lp_oracle.hpp"

using namespace gridshift;
using LP = lp::LinearProgram<double>;

namespace {

LP single_variable() {
  LP p;
  p.objective = Eigen::VectorXd::Ones(1);
  p.lower = Eigen::VectorXd::Constant(1, -LP::infinity());
  p.upper = Eigen::VectorXd::Constant(1, 10.0);
  p.eq_matrix.resize(0, 1);
  p.ineq_matrix.resize(1, 1);
  p.ineq_matrix.insert(0, 0) = 1.0;
  p.ineq_rhs = Eigen::VectorXd::Constant(1, 3.0);
  p.ineq_sense = {lp::Sense::greater_equal};
  return p;
}

LP merit_order(double demand) {
  LP p;
  p.objective = Eigen::Vector2d(20, 50);
  p.lower = Eigen::Vector2d(0, 0);
  p.upper = Eigen::Vector2d(60, 100);
  p.eq_matrix.resize(1, 2);
  p.eq_matrix.insert(0, 0) = 1;
  p.eq_matrix.insert(0, 1) = 1;
  p.eq_rhs = Eigen::VectorXd::Constant(1, demand);
  p.ineq_matrix.resize(0, 2);
  return p;
}

}  // namespace

TEST_CASE("lp: single variable with a lower constraint") {
  const auto s = lp::solve(single_variable());
  REQUIRE(s.optimal());
  CHECK(s.x[0] == doctest::Approx(3));
  CHECK(s.objective == doctest::Approx(3));
  CHECK(s.ineq_duals[0] == doctest::Approx(1));
}

TEST_CASE("lp: two-generator merit order") {
  const auto s = lp::solve(merit_order(100));
  REQUIRE(s.optimal());
  CHECK(s.x[0] == doctest::Approx(60));
  CHECK(s.x[1] == doctest::Approx(40));
  CHECK(s.eq_duals[0] == doctest::Approx(50));
}

TEST_CASE("lp: infeasible and unbounded") {
  CHECK(lp::solve(merit_order(200)).status == lp::Status::infeasible);
  LP p = single_variable();
  p.objective[0] = -1;
  p.upper[0] = LP::infinity();
  CHECK(lp::solve(p).status == lp::Status::unbounded);
}

TEST_CASE("lp: structural errors") {
  LP p = merit_order(100);
  p.lower.resize(1);
  CHECK_THROWS_AS(lp::solve(p), StructuralError);
  p = merit_order(100);
  p.lower[0] = 70;
  CHECK_THROWS_AS(lp::solve(p), StructuralError);
}

TEST_CASE("lp: scaling the objective scales the duals") {
  LP p = merit_order(100);
  const auto a = lp::solve(p);
  p.objective *= 7.0;
  const auto b = lp::solve(p);
  REQUIRE(a.optimal());
  REQUIRE(b.optimal());
  CHECK(b.eq_duals[0] == doctest::Approx(7.0 * a.eq_duals[0]));
  CHECK((a.x - b.x).norm() < 1e-9);
}

TEST_CASE("lp: warm start reproduces the cold solution") {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int k = 0; k < 200; ++k) {
    const LP p = testing::random_lp(rng);
    const auto cold = lp::solve(p);
    if (!cold.optimal()) continue;
    const auto warm = lp::solve(p, &cold.basis);
    REQUIRE(warm.optimal());
    CHECK(warm.objective == doctest::Approx(cold.objective).epsilon(1e-9));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("lp: random instances against vertex enumeration") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 300; ++k) {
    const LP p = testing::random_lp(rng);
    const auto s = lp::solve(p);
    const auto best = testing::vertex_enumeration_optimum(p);
    if (!best) {
      CHECK(s.status == lp::Status::infeasible);
      continue;
    }
    REQUIRE(s.optimal());
    CHECK(std::abs(s.objective - *best) <= 1e-6 * (1 + std::abs(*best)));
    CHECK(std::abs(testing::dual_objective(p, s) - s.objective) <= 1e-6 * (1 + std::abs(*best)));
  }
}

TEST_CASE("lp: deterministic and dumpable") {
  std::mt19937_64 rng(5);
  const LP p = testing::random_lp(rng);
  const auto a = lp::solve(p);
  const auto b = lp::solve(p);
  CHECK(a.status == b.status);
  CHECK(a.x == b.x);
  const std::string text = lp::to_lp_text(merit_order(100));
  CHECK(text == "obj 20 50\nbound 0 0 60\nbound 1 0 100\neq 0 0:1 1:1 = 100\n");
}
