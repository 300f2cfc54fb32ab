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

#include <algorithm>
#include <cmath>
#include <random>

#include "gridshift/regimes.hpp"

using namespace gridshift;

namespace {

/// Winter days at level 1, summer days at level 2, with a diurnal bump and noise.
std::vector<HourlyVector> seasonal_profiles(int days, std::vector<Regime>& truth, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.08);
  std::vector<HourlyVector> out;
  for (int d = 0; d < days; ++d) {
    const bool summer = (d / 10) % 2 == 1;
    truth.push_back(summer ? Regime::high_gnd : Regime::low_gnd);
    HourlyVector v;
    const double level = (summer ? 2.0 : 1.0) * (1.0 + noise(rng));
    for (int h = 0; h < kHoursPerDay; ++h) {
      v[h] = 1000.0 * level * (1.0 + 0.2 * std::sin((h - 8) * 3.14159265 / 12.0)) + 20.0 * noise(rng);
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("regimes recover a bimodal season split") {
  std::vector<Regime> truth;
  const auto profiles = seasonal_profiles(120, truth, 5);
  const RegimeFit fit = fit_gnd_regimes(profiles);
  CHECK_FALSE(fit.model.degenerate);
  int agree = 0;
  for (std::size_t d = 0; d < truth.size(); ++d) agree += fit.labels[d] == truth[d];
  CHECK(agree >= 108);
  CHECK(fit.model.explained.sum() >= 0.9);
  for (std::size_t d = 0; d < truth.size(); ++d) CHECK(fit.model.classify(profiles[d]) == fit.labels[d]);

  // Same seed, same answer.
  CHECK(fit_gnd_regimes(profiles).labels == fit.labels);

  // Labels follow the days, not their order.
  std::vector<std::size_t> perm(profiles.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(9));
  std::vector<HourlyVector> shuffled;
  for (auto i : perm) shuffled.push_back(profiles[i]);
  const RegimeFit other = fit_gnd_regimes(shuffled);
  for (std::size_t i = 0; i < perm.size(); ++i) CHECK(other.labels[i] == fit.labels[perm[i]]);
}

TEST_CASE("regimes: degenerate and undersized input") {
  std::vector<HourlyVector> same(10, HourlyVector::Constant(500.0));
  const RegimeFit fit = fit_gnd_regimes(same);
  CHECK(fit.model.degenerate);
  for (Regime r : fit.labels) CHECK(r == Regime::low_gnd);
  CHECK_THROWS_AS(fit_gnd_regimes(std::vector<HourlyVector>(3, HourlyVector::Zero())), ConfigError);
  CHECK(regime_from_string(to_string(Regime::high_gnd)) == Regime::high_gnd);
}
