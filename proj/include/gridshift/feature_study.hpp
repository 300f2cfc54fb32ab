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

#ifndef GRIDSHIFT_FEATURE_STUDY_HPP
#define GRIDSHIFT_FEATURE_STUDY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gridshift/analysis.hpp"
#include "gridshift/signals.hpp"
#include "gridshift/strategies.hpp"

namespace gridshift {

struct LabeledDay {
  DayFeatures features;
  StrategyId label = StrategyId::base;
};

/// Best strategy per day by CO2 savings (ties by name) among the candidates.
/// Throws ConfigError when a day lacks features or a candidate record.
std::vector<LabeledDay> label_days(const std::vector<DayFeatures>& features,
                                   const std::vector<ImpactRecord>& records,
                                   const std::vector<StrategyId>& candidates);

/// Design matrix view of labelled days.
struct FeatureData {
  std::vector<std::string> names;
  std::vector<std::vector<double>> x;
  std::vector<int> y;  // StrategyId values

  static FeatureData from(const std::vector<LabeledDay>& days);
  std::size_t size() const { return y.size(); }
  /// Share of the most frequent class.
  double majority_rate() const;
};

struct Stump {
  int feature = -1;  // -1: a single leaf
  double split = 0.0;
  int left = 0;      // class when x[feature] <= split
  int right = 0;
  std::vector<int> left_votes;   // per class, bootstrap counts
  std::vector<int> right_votes;
  double impurity_decrease = 0.0;
};

struct ForestOptions {
  int n_trees = 200;
  double feature_rate = 0.0;  // <= 0: sqrt(F) / F
  std::uint64_t seed = 1;
};

struct StumpForest {
  std::vector<Stump> stumps;
  std::vector<std::uint64_t> seeds;
  double feature_rate = 0.0;
  int n_features = 0;
  int n_classes = 0;
  /// Set when the training data held a single class.
  bool degenerate = false;

  /// Majority vote; ties go to the smaller class id.
  int predict(const std::vector<double>& x) const;
};

/// Bagged depth-one trees split by Gini impurity.  Throws ConfigError with
/// fewer than 10 days.
StumpForest train_forest(const FeatureData& data, const ForestOptions& options = {});

/// Mean validation accuracy over k seeded folds.  Throws ConfigError when
/// k exceeds the number of days.
double cross_validate(const FeatureData& data, int k = 10, const ForestOptions& options = {});

struct FeatureImportance {
  int feature = 0;
  std::string name;
  double importance = 0.0;
};

/// Mean impurity decrease per feature, normalised to sum to 1, descending.
std::vector<FeatureImportance> feature_importance(const StumpForest& forest, const std::vector<std::string>& names);

std::string importance_csv(const std::vector<FeatureImportance>& ranked);

}  // namespace gridshift

#endif  // GRIDSHIFT_FEATURE_STUDY_HPP
