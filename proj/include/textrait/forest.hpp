/*
 * Copyright 2026 The textrait Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Random forest regression (bootstrap-aggregated CART trees with a random
// feature subset per node).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "textrait/features.hpp"

namespace textrait {

struct MaxFeatures {
  enum class Rule { third, sqrt, all, count };
  Rule rule = Rule::third;
  std::size_t count = 0;  // used when rule == count

  // Features tried per node for a d-column matrix, in [1, d].
  std::size_t resolve(std::size_t d) const;
  std::string to_string() const;
  // "third", "sqrt", "all" or a positive integer.
  static MaxFeatures parse(std::string_view s);
  friend bool operator==(const MaxFeatures&, const MaxFeatures&) = default;
};

struct ForestConfig {
  std::size_t n_trees = 200;
  MaxFeatures max_features;
  std::size_t min_samples_leaf = 5;
  std::optional<std::size_t> max_depth;  // nullopt: unlimited
  bool bootstrap = true;
  std::uint64_t seed = 0;

  // Throws UsageError when n_trees or min_samples_leaf is zero.
  void validate() const;
  friend bool operator==(const ForestConfig&, const ForestConfig&) = default;
};

struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;     // x[feature] <= threshold goes left
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  double value = 0.0;  // leaf mean (internal nodes: mean of the node)
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct RegressionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  double predict(std::span<const double> x) const;
  friend bool operator==(const RegressionTree&, const RegressionTree&) = default;
};

class Forest {
 public:
  Forest() = default;
  // Checks node links and feature indices; throws DataError when malformed.
  Forest(ForestConfig config, std::size_t n_features, double y_min, double y_max,
         std::vector<RegressionTree> trees);

  const ForestConfig& config() const { return config_; }
  std::size_t n_features() const { return n_features_; }
  double y_min() const { return y_min_; }
  double y_max() const { return y_max_; }
  const std::vector<RegressionTree>& trees() const { return trees_; }

  // Mean of the per-tree leaf values, clamped to [y_min, y_max]. Throws
  // UsageError on a dimension mismatch.
  double predict(std::span<const double> x) const;
  std::vector<double> predict(const FeatureMatrix& x) const;

  friend bool operator==(const Forest&, const Forest&) = default;

 private:
  ForestConfig config_;
  std::size_t n_features_ = 0;
  double y_min_ = 0.0;
  double y_max_ = 0.0;
  std::vector<RegressionTree> trees_;
};

// Grows config.n_trees trees on up to `threads` workers. Tree i draws from
// derive_seed(config.seed, i), so the result does not depend on `threads`.
Forest fit_forest(const FeatureMatrix& x, std::span<const double> y, const ForestConfig& config,
                  std::size_t threads = 1);

}  // namespace textrait
