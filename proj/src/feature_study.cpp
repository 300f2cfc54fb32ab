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

#include "gridshift/feature_study.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "gridshift/format.hpp"

namespace gridshift {

namespace {

constexpr int kClasses = static_cast<int>(kAllStrategies.size());

double gini(const std::vector<int>& counts, int total) {
  if (total == 0) return 0.0;
  double s = 1.0;
  for (int c : counts) {
    const double p = static_cast<double>(c) / total;
    s -= p * p;
  }
  return s;
}

int majority(const std::vector<int>& counts) {
  return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

std::uint64_t tree_seed(std::uint64_t seed, std::uint64_t tree) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tree + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Stump train_stump(const FeatureData& data, const std::vector<std::size_t>& rows, std::vector<int> features) {
  const int n = static_cast<int>(rows.size());
  std::vector<int> all(kClasses, 0);
  for (auto r : rows) ++all[data.y[r]];
  Stump best;
  best.left = best.right = majority(all);
  best.left_votes = all;
  best.right_votes.assign(kClasses, 0);
  const double parent = gini(all, n);
  double best_child = parent;
  std::sort(features.begin(), features.end());
  std::vector<std::size_t> order(rows);
  for (int f : features) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return data.x[a][f] < data.x[b][f]; });
    std::vector<int> left(kClasses, 0), right = all;
    for (int i = 0; i + 1 < n; ++i) {
      const int c = data.y[order[i]];
      ++left[c];
      --right[c];
      const double a = data.x[order[i]][f], b = data.x[order[i + 1]][f];
      if (!(a < b)) continue;
      const int nl = i + 1, nr = n - nl;
      const double child = (nl * gini(left, nl) + nr * gini(right, nr)) / n;
      if (child < best_child - 1e-12) {
        best_child = child;
        best.feature = f;
        best.split = a + (b - a) / 2.0;
        best.left_votes = left;
        best.right_votes = right;
      }
    }
  }
  if (best.feature >= 0) {
    best.left = majority(best.left_votes);
    best.right = majority(best.right_votes);
    best.impurity_decrease = parent - best_child;
  }
  return best;
}

}  // namespace

std::vector<LabeledDay> label_days(const std::vector<DayFeatures>& features,
                                   const std::vector<ImpactRecord>& records,
                                   const std::vector<StrategyId>& candidates) {
  std::map<std::pair<std::string, std::string>, double> saved;
  for (const auto& r : records) saved[{r.date, r.strategy}] = r.co2_saved;
  std::vector<StrategyId> order(candidates);
  std::sort(order.begin(), order.end(), [](StrategyId a, StrategyId b) { return to_string(a) < to_string(b); });
  std::vector<LabeledDay> out;
  for (const auto& f : features) {
    LabeledDay d{f, order.front()};
    double best = 0.0;
    bool have = false;
    for (StrategyId s : order) {
      const auto it = saved.find({f.date, std::string(to_string(s))});
      if (it == saved.end()) throw ConfigError("day " + f.date + " lacks strategy " + std::string(to_string(s)));
      if (!have || it->second > best) {
        best = it->second;
        d.label = s;
        have = true;
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

FeatureData FeatureData::from(const std::vector<LabeledDay>& days) {
  FeatureData d;
  if (!days.empty()) d.names = days.front().features.names();
  for (const auto& day : days) {
    d.x.push_back(day.features.values());
    if (d.x.back().size() != d.names.size()) throw StructuralError("days disagree on the feature set");
    d.y.push_back(static_cast<int>(day.label));
  }
  return d;
}

double FeatureData::majority_rate() const {
  if (y.empty()) return 0.0;
  std::vector<int> counts(kClasses, 0);
  for (int c : y) ++counts[c];
  return static_cast<double>(*std::max_element(counts.begin(), counts.end())) / static_cast<double>(y.size());
}

int StumpForest::predict(const std::vector<double>& x) const {
  std::vector<int> votes(static_cast<std::size_t>(n_classes), 0);
  for (const auto& s : stumps) ++votes[s.feature < 0 || x[s.feature] <= s.split ? s.left : s.right];
  return majority(votes);
}

StumpForest train_forest(const FeatureData& data, const ForestOptions& options) {
  const std::size_t n = data.size();
  if (n < 10) throw ConfigError("forest training needs at least 10 days, got " + std::to_string(n));
  if (options.n_trees < 1) throw ConfigError("forest needs at least one tree");
  const int nf = static_cast<int>(data.names.size());
  StumpForest forest;
  forest.n_features = nf;
  forest.n_classes = kClasses;
  forest.feature_rate = options.feature_rate > 0.0 ? std::min(1.0, options.feature_rate)
                                                   : (nf > 0 ? std::sqrt(static_cast<double>(nf)) / nf : 1.0);
  const int per_tree = std::max(1, static_cast<int>(std::lround(forest.feature_rate * nf)));
  forest.degenerate = std::all_of(data.y.begin(), data.y.end(), [&](int c) { return c == data.y.front(); });
  std::vector<int> all_features(static_cast<std::size_t>(nf));
  std::iota(all_features.begin(), all_features.end(), 0);
  for (int t = 0; t < options.n_trees; ++t) {
    const std::uint64_t seed = tree_seed(options.seed, static_cast<std::uint64_t>(t));
    forest.seeds.push_back(seed);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::size_t> rows(n);
    for (auto& r : rows) r = pick(rng);
    std::vector<int> features = all_features;
    std::shuffle(features.begin(), features.end(), rng);
    features.resize(static_cast<std::size_t>(std::min(per_tree, nf)));
    forest.stumps.push_back(train_stump(data, rows, features));
  }
  return forest;
}

double cross_validate(const FeatureData& data, int k, const ForestOptions& options) {
  const std::size_t n = data.size();
  if (k < 2 || static_cast<std::size_t>(k) > n) {
    throw ConfigError("cannot make " + std::to_string(k) + " folds from " + std::to_string(n) + " days");
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(options.seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  double sum = 0.0;
  for (int fold = 0; fold < k; ++fold) {
    FeatureData train, test;
    train.names = test.names = data.names;
    for (std::size_t i = 0; i < n; ++i) {
      FeatureData& dst = static_cast<int>(i % static_cast<std::size_t>(k)) == fold ? test : train;
      dst.x.push_back(data.x[idx[i]]);
      dst.y.push_back(data.y[idx[i]]);
    }
    ForestOptions o = options;
    o.seed = tree_seed(options.seed, 1000003u + static_cast<std::uint64_t>(fold));
    const StumpForest f = train_forest(train, o);
    int correct = 0;
    for (std::size_t i = 0; i < test.size(); ++i) correct += f.predict(test.x[i]) == test.y[i];
    sum += static_cast<double>(correct) / static_cast<double>(test.size());
  }
  return sum / k;
}

std::vector<FeatureImportance> feature_importance(const StumpForest& forest, const std::vector<std::string>& names) {
  std::vector<double> total(static_cast<std::size_t>(forest.n_features), 0.0);
  for (const auto& s : forest.stumps) {
    if (s.feature >= 0) total[s.feature] += s.impurity_decrease;
  }
  const double sum = std::accumulate(total.begin(), total.end(), 0.0);
  std::vector<FeatureImportance> out;
  for (int f = 0; f < forest.n_features; ++f) {
    const double v = sum > 0.0 ? total[f] / sum : 1.0 / forest.n_features;
    out.push_back({f, f < static_cast<int>(names.size()) ? names[f] : "f" + std::to_string(f), v});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const FeatureImportance& a, const FeatureImportance& b) { return a.importance > b.importance; });
  return out;
}

std::string importance_csv(const std::vector<FeatureImportance>& ranked) {
  std::string out = "rank,feature,importance\n";
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    out += std::to_string(i + 1) + ',' + ranked[i].name + ',' + format_double(ranked[i].importance) + '\n';
  }
  return out;
}

}  // namespace gridshift
