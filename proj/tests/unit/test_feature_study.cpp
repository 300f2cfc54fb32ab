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

#include "gridshift/feature_study.hpp"

using namespace gridshift;

namespace {

constexpr int kLmp = static_cast<int>(StrategyId::lmp);
constexpr int kWs = static_cast<int>(StrategyId::ws);

FeatureData make(int n, int features) {
  FeatureData d;
  for (int f = 0; f < features; ++f) d.names.push_back("f" + std::to_string(f));
  d.x.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(features), 0.0));
  d.y.assign(static_cast<std::size_t>(n), kLmp);
  return d;
}

double training_accuracy(const StumpForest& f, const FeatureData& d) {
  int ok = 0;
  for (std::size_t i = 0; i < d.size(); ++i) ok += f.predict(d.x[i]) == d.y[i];
  return static_cast<double>(ok) / static_cast<double>(d.size());
}

}  // namespace

TEST_CASE("separable single feature") {
  FeatureData d = make(60, 1);
  for (int i = 0; i < 60; ++i) {
    d.x[i][0] = i;
    d.y[i] = i < 30 ? kLmp : kWs;
  }
  const StumpForest f = train_forest(d);
  CHECK(f.stumps.size() == 200);
  CHECK(training_accuracy(f, d) == 1.0);
  const auto imp = feature_importance(f, d.names);
  REQUIRE(imp.size() == 1);
  CHECK(imp[0].importance == doctest::Approx(1.0));
  CHECK(cross_validate(d) >= 0.9);

  const StumpForest g = train_forest(d);
  REQUIRE(g.stumps.size() == f.stumps.size());
  for (std::size_t i = 0; i < f.stumps.size(); ++i) {
    CHECK(g.stumps[i].split == f.stumps[i].split);
    CHECK(g.stumps[i].left_votes == f.stumps[i].left_votes);
  }
  CHECK(g.seeds == f.seeds);
}

TEST_CASE("symmetric duplicated features share importance") {
  FeatureData d = make(80, 2);
  for (int i = 0; i < 80; ++i) {
    d.x[i][0] = d.x[i][1] = i % 40;
    d.y[i] = i % 40 < 20 ? kLmp : kWs;
  }
  ForestOptions o;
  o.feature_rate = 0.5;
  const auto imp = feature_importance(train_forest(d, o), d.names);
  double sum = 0;
  for (const auto& i : imp) {
    CHECK(i.importance == doctest::Approx(0.5).epsilon(0.3));
    CHECK(i.importance >= 0.0);
    sum += i.importance;
  }
  CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("uninformative features") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  FeatureData d = make(300, 5);
  for (auto& row : d.x) {
    for (double& v : row) v = u(rng);
  }
  for (auto& y : d.y) y = u(rng) < 0.6 ? kLmp : kWs;
  const double cv = cross_validate(d);
  CHECK(std::abs(cv - d.majority_rate()) <= 0.10);

  FeatureData flat = make(100, 3);
  for (int i = 0; i < 100; ++i) flat.y[i] = i < 60 ? kLmp : kWs;
  CHECK(cross_validate(flat) == doctest::Approx(0.6).epsilon(0.1));
}

TEST_CASE("forest preconditions") {
  FeatureData one = make(20, 2);
  const StumpForest f = train_forest(one);
  CHECK(f.degenerate);
  CHECK(f.predict({0.0, 0.0}) == kLmp);
  CHECK_THROWS_AS(train_forest(make(9, 2)), ConfigError);
  CHECK_THROWS_AS(cross_validate(make(12, 2), 13), ConfigError);
  CHECK(importance_csv(feature_importance(f, one.names)).rfind("rank,feature,importance\n", 0) == 0);
}
