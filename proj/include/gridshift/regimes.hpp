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

#ifndef GRIDSHIFT_REGIMES_HPP
#define GRIDSHIFT_REGIMES_HPP

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "gridshift/common.hpp"

namespace gridshift {

enum class Regime { low_gnd, high_gnd };

std::string_view to_string(Regime r);
/// Throws ConfigError for unknown names.
Regime regime_from_string(std::string_view name);

/// Principal components of daily GND profiles and a two-cluster k-means
/// partition of the projections.
struct RegimeModel {
  Eigen::VectorXd mean;          // 24
  Eigen::MatrixXd components;    // 24 x retained
  Eigen::VectorXd explained;     // variance share of each retained component
  Eigen::MatrixXd centroids;     // 2 x retained
  std::array<Regime, 2> label_of_cluster{Regime::low_gnd, Regime::high_gnd};
  /// Set when the profiles carry no variance; every day is one cluster.
  bool degenerate = false;

  Eigen::VectorXd project(const HourlyVector& gnd) const;
  int cluster(const HourlyVector& gnd) const;
  Regime classify(const HourlyVector& gnd) const;
};

struct RegimeFit {
  RegimeModel model;
  std::vector<int> clusters;
  std::vector<Regime> labels;
};

struct RegimeOptions {
  double variance_share = 0.9;
  std::uint64_t seed = 1;
  int restarts = 10;
  int max_iterations = 300;
};

/// PCA keeping the leading components that explain variance_share of the
/// variance, then k-means (k = 2, k-means++ seeding, best of restarts).  The
/// cluster whose centroid has the larger mean GND is high_gnd.  Throws
/// ConfigError with fewer than 4 days.
RegimeFit fit_gnd_regimes(const std::vector<HourlyVector>& profiles, const RegimeOptions& options = {});

}  // namespace gridshift

#endif  // GRIDSHIFT_REGIMES_HPP
