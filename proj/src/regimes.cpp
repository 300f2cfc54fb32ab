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

#include "gridshift/regimes.hpp"

#include <Eigen/Eigenvalues>

#include <limits>
#include <random>

namespace gridshift {

namespace {

constexpr int kClusters = 2;

struct KMeansResult {
  Eigen::MatrixXd centroids;
  std::vector<int> assignment;
  double inertia = std::numeric_limits<double>::infinity();
};

int nearest(const Eigen::MatrixXd& centroids, const Eigen::RowVectorXd& x) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int c = 0; c < centroids.rows(); ++c) {
    const double d = (centroids.row(c) - x).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

KMeansResult kmeans(const Eigen::MatrixXd& x, std::mt19937_64& rng, int max_iterations) {
  const Eigen::Index n = x.rows();
  KMeansResult r;
  r.centroids.resize(kClusters, x.cols());
  // k-means++ seeding.
  std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
  r.centroids.row(0) = x.row(first(rng));
  Eigen::VectorXd d2(n);
  for (int c = 1; c < kClusters; ++c) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int k = 0; k < c; ++k) best = std::min(best, (x.row(i) - r.centroids.row(k)).squaredNorm());
      d2[i] = best;
    }
    const double total = d2.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      double u = std::uniform_real_distribution<double>(0.0, total)(rng);
      for (pick = 0; pick < n - 1; ++pick) {
        u -= d2[pick];
        if (u < 0.0) break;
      }
    }
    r.centroids.row(c) = x.row(pick);
  }
  r.assignment.assign(static_cast<std::size_t>(n), -1);
  for (int it = 0; it < max_iterations; ++it) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      const int c = nearest(r.centroids, x.row(i));
      if (c != r.assignment[i]) {
        r.assignment[i] = c;
        changed = true;
      }
    }
    if (!changed) break;
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(kClusters, x.cols());
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(kClusters);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(r.assignment[i]) += x.row(i);
      counts[r.assignment[i]] += 1;
    }
    for (int c = 0; c < kClusters; ++c) {
      if (counts[c] > 0) r.centroids.row(c) = sums.row(c) / counts[c];
    }
  }
  r.inertia = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) r.inertia += (x.row(i) - r.centroids.row(r.assignment[i])).squaredNorm();
  return r;
}

}  // namespace

std::string_view to_string(Regime r) { return r == Regime::low_gnd ? "low_gnd" : "high_gnd"; }

Regime regime_from_string(std::string_view name) {
  if (name == "low_gnd") return Regime::low_gnd;
  if (name == "high_gnd") return Regime::high_gnd;
  throw ConfigError("unknown regime '" + std::string(name) + "'");
}

Eigen::VectorXd RegimeModel::project(const HourlyVector& gnd) const {
  return components.transpose() * (gnd - mean);
}

int RegimeModel::cluster(const HourlyVector& gnd) const {
  if (degenerate) return 0;
  return nearest(centroids, project(gnd).transpose());
}

Regime RegimeModel::classify(const HourlyVector& gnd) const { return label_of_cluster[cluster(gnd)]; }

RegimeFit fit_gnd_regimes(const std::vector<HourlyVector>& profiles, const RegimeOptions& options) {
  const auto n = static_cast<Eigen::Index>(profiles.size());
  if (n < 2 * kClusters) {
    throw ConfigError("regime clustering needs at least " + std::to_string(2 * kClusters) + " days, got " +
                      std::to_string(n));
  }
  Eigen::MatrixXd x(n, kHoursPerDay);
  for (Eigen::Index i = 0; i < n; ++i) x.row(i) = profiles[i].transpose();

  RegimeFit fit;
  RegimeModel& m = fit.model;
  m.mean = x.colwise().mean().transpose();
  const Eigen::MatrixXd centered = x.rowwise() - m.mean.transpose();
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const Eigen::VectorXd values = eig.eigenvalues().reverse().cwiseMax(0.0);
  const Eigen::MatrixXd vectors = eig.eigenvectors().rowwise().reverse();
  const double total = values.sum();

  if (!(total > 1e-12 * (1.0 + m.mean.squaredNorm()))) {
    m.degenerate = true;
    m.components = Eigen::MatrixXd::Zero(kHoursPerDay, 0);
    m.explained.resize(0);
    m.centroids = Eigen::MatrixXd::Zero(kClusters, 0);
    m.label_of_cluster = {Regime::low_gnd, Regime::low_gnd};
    fit.clusters.assign(static_cast<std::size_t>(n), 0);
    fit.labels.assign(static_cast<std::size_t>(n), Regime::low_gnd);
    return fit;
  }

  int keep = 0;
  double covered = 0.0;
  while (keep < kHoursPerDay && covered < options.variance_share * total) covered += values[keep++];
  m.components = vectors.leftCols(keep);
  // Sign convention: the largest-magnitude loading of each component is positive.
  for (int k = 0; k < keep; ++k) {
    Eigen::Index arg = 0;
    m.components.col(k).cwiseAbs().maxCoeff(&arg);
    if (m.components(arg, k) < 0) m.components.col(k) *= -1.0;
  }
  m.explained = values.head(keep) / total;

  const Eigen::MatrixXd proj = centered * m.components;
  std::mt19937_64 rng(options.seed);
  KMeansResult best;
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    KMeansResult k = kmeans(proj, rng, options.max_iterations);
    if (k.inertia < best.inertia) best = std::move(k);
  }
  m.centroids = best.centroids;
  // Label by the mean GND of each reconstructed centroid.
  std::array<double, kClusters> level{};
  for (int c = 0; c < kClusters; ++c) {
    level[c] = (m.mean + m.components * m.centroids.row(c).transpose()).mean();
  }
  if (level[0] > level[1]) {
    m.label_of_cluster = {Regime::high_gnd, Regime::low_gnd};
  } else {
    m.label_of_cluster = {Regime::low_gnd, Regime::high_gnd};
  }
  fit.clusters = best.assignment;
  for (int c : fit.clusters) fit.labels.push_back(m.label_of_cluster[c]);
  return fit;
}

}  // namespace gridshift
