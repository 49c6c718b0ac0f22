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

#include "textrait/forest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "textrait/error.hpp"
#include "textrait/parallel.hpp"
#include "textrait/random.hpp"

namespace textrait {

std::size_t MaxFeatures::resolve(std::size_t d) const {
  if (d == 0) return 0;
  switch (rule) {
    case Rule::third: return std::max<std::size_t>(1, d / 3);
    case Rule::sqrt: return std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(d))));
    case Rule::all: return d;
    case Rule::count: return std::clamp<std::size_t>(count, 1, d);
  }
  return d;
}

std::string MaxFeatures::to_string() const {
  switch (rule) {
    case Rule::third: return "third";
    case Rule::sqrt: return "sqrt";
    case Rule::all: return "all";
    case Rule::count: return std::to_string(count);
  }
  return "third";
}

MaxFeatures MaxFeatures::parse(std::string_view s) {
  if (s == "third") return {Rule::third, 0};
  if (s == "sqrt") return {Rule::sqrt, 0};
  if (s == "all") return {Rule::all, 0};
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || ptr != s.data() + s.size() || n == 0) {
    throw UsageError("max_features must be third, sqrt, all or a positive integer, got '" + std::string(s) + "'");
  }
  return {Rule::count, n};
}

void ForestConfig::validate() const {
  if (n_trees == 0) throw UsageError("n_trees must be at least 1");
  if (min_samples_leaf == 0) throw UsageError("min_samples_leaf must be at least 1");
  if (max_features.rule == MaxFeatures::Rule::count && max_features.count == 0) {
    throw UsageError("max_features must be positive");
  }
}

double RegressionTree::predict(std::span<const double> x) const {
  std::size_t i = 0;
  while (nodes[i].feature >= 0) {
    const auto& n = nodes[i];
    i = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return nodes[i].value;
}

Forest::Forest(ForestConfig config, std::size_t n_features, double y_min, double y_max,
               std::vector<RegressionTree> trees)
    : config_(config), n_features_(n_features), y_min_(y_min), y_max_(y_max), trees_(std::move(trees)) {
  if (trees_.empty()) throw DataError("forest has no trees");
  if (!(y_min_ <= y_max_)) throw DataError("forest target range is empty");
  for (const auto& t : trees_) {
    if (t.nodes.empty()) throw DataError("forest contains an empty tree");
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
      const auto& n = t.nodes[i];
      if (!std::isfinite(n.value)) throw DataError("non-finite tree node value");
      if (n.feature < 0) continue;
      // Children always follow their parent, which also rules out cycles.
      if (static_cast<std::size_t>(n.feature) >= n_features_ || n.left <= i || n.right <= i ||
          n.left >= t.nodes.size() || n.right >= t.nodes.size() || !std::isfinite(n.threshold)) {
        throw DataError("malformed tree node " + std::to_string(i));
      }
    }
  }
}

double Forest::predict(std::span<const double> x) const {
  if (x.size() != n_features_) {
    throw UsageError("feature vector has dimension " + std::to_string(x.size()) + ", forest expects " +
                     std::to_string(n_features_));
  }
  // Shifted mean: exact when every tree agrees, and shift-equivariant.
  const double v0 = trees_.front().predict(x);
  double acc = 0.0;
  for (std::size_t t = 1; t < trees_.size(); ++t) acc += trees_[t].predict(x) - v0;
  const double m = v0 + acc / static_cast<double>(trees_.size());
  return std::clamp(m, y_min_, y_max_);
}

std::vector<double> Forest::predict(const FeatureMatrix& x) const {
  std::vector<double> out(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) out[r] = predict(x.row(r));
  return out;
}

namespace {

// Relative tolerance under which two split gains count as equal, so that
// rounding noise cannot override the index-based tie-break.
constexpr double kGainTolerance = 1e-9;

struct Split {
  bool found = false;
  double gain = 0.0;
  std::size_t feature = 0;
  double threshold = 0.0;
};

double midpoint(double a, double b) {
  const double t = a + (b - a) / 2.0;
  return t < b ? t : a;
}

class TreeBuilder {
 public:
  TreeBuilder(const FeatureMatrix& x, std::span<const double> y, const ForestConfig& config, std::uint64_t seed)
      : x_(x), y_(y), config_(config), rng_(seed), perm_(x.cols()) {
    for (std::size_t f = 0; f < perm_.size(); ++f) perm_[f] = static_cast<std::uint32_t>(f);
    max_features_ = config.max_features.resolve(x.cols());
  }

  RegressionTree build() {
    const std::size_t n = y_.size();
    samples_.resize(n);
    if (config_.bootstrap) {
      for (auto& s : samples_) s = static_cast<std::uint32_t>(uniform_index(rng_, n));
    } else {
      for (std::size_t i = 0; i < n; ++i) samples_[i] = static_cast<std::uint32_t>(i);
    }
    RegressionTree tree;
    grow(tree, 0, n, 0);
    return tree;
  }

 private:
  std::uint32_t grow(RegressionTree& tree, std::size_t begin, std::size_t end, std::size_t depth) {
    const auto id = static_cast<std::uint32_t>(tree.nodes.size());
    tree.nodes.emplace_back();
    const std::size_t n = end - begin;

    const double v0 = y_[samples_[begin]];
    double acc = 0.0;
    bool constant = true;
    for (std::size_t k = begin; k < end; ++k) {
      const double v = y_[samples_[k]];
      acc += v - v0;
      constant = constant && v == v0;
    }
    const double mean = v0 + acc / static_cast<double>(n);
    tree.nodes[id].value = mean;

    if (constant || n < 2 * config_.min_samples_leaf || (config_.max_depth && depth >= *config_.max_depth)) {
      return id;
    }
    const Split split = find_split(begin, end, mean);
    if (!split.found) return id;

    const auto col = x_.column(split.feature);
    const auto mid = std::stable_partition(samples_.begin() + static_cast<std::ptrdiff_t>(begin),
                                           samples_.begin() + static_cast<std::ptrdiff_t>(end),
                                           [&](std::uint32_t s) { return col[s] <= split.threshold; });
    const auto cut = static_cast<std::size_t>(mid - samples_.begin());
    if (cut == begin || cut == end) throw InvariantError("tree split produced an empty child");

    tree.nodes[id].feature = static_cast<std::int32_t>(split.feature);
    tree.nodes[id].threshold = split.threshold;
    const auto left = grow(tree, begin, cut, depth + 1);
    const auto right = grow(tree, cut, end, depth + 1);
    tree.nodes[id].left = left;
    tree.nodes[id].right = right;
    return id;
  }

  Split find_split(std::size_t begin, std::size_t end, double mean) {
    const std::size_t n = end - begin;
    centered_.resize(n);
    double total = 0.0;
    double squares = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double d = y_[samples_[begin + k]] - mean;
      centered_[k] = d;
      total += d;
      squares += d * d;
    }
    const double nd = static_cast<double>(n);
    const double base = total * total / nd;
    const double sse = squares - base;
    const double min_gain = 1e-12 * sse;

    Split best;
    std::size_t tried = 0;
    const std::size_t d = perm_.size();
    for (std::size_t i = 0; i < d; ++i) {
      if (tried >= max_features_ && best.found) break;
      std::swap(perm_[i], perm_[i + uniform_index(rng_, d - i)]);
      const std::size_t f = perm_[i];
      ++tried;
      scan_feature(f, begin, n, total, base, min_gain, best);
    }
    return best;
  }

  // Sweeps the distinct values of feature f in ascending order. Zeros are
  // counted as one block without sorting, which keeps sparse columns cheap.
  void scan_feature(std::size_t f, std::size_t begin, std::size_t n, double total, double base, double min_gain,
                    Split& best) {
    const auto col = x_.column(f);
    nonzero_.clear();
    std::size_t zero_count = 0;
    double zero_sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double v = col[samples_[begin + k]];
      if (v == 0.0) {
        ++zero_count;
        zero_sum += centered_[k];
      } else {
        nonzero_.emplace_back(v, centered_[k]);
      }
    }
    if (nonzero_.empty()) return;
    std::sort(nonzero_.begin(), nonzero_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    const std::size_t min_leaf = config_.min_samples_leaf;
    std::size_t left_count = 0;
    double left_sum = 0.0;
    double prev = 0.0;
    auto visit = [&](double value, std::size_t count, double sum) {
      if (left_count > 0 && left_count >= min_leaf && n - left_count >= min_leaf) {
        const double right_sum = total - left_sum;
        const double gain = left_sum * left_sum / static_cast<double>(left_count) +
                            right_sum * right_sum / static_cast<double>(n - left_count) - base;
        if (gain > min_gain && gain > 0.0) consider(best, gain, f, midpoint(prev, value));
      }
      left_count += count;
      left_sum += sum;
      prev = value;
    };

    bool zeros_done = zero_count == 0;
    std::size_t p = 0;
    while (p < nonzero_.size()) {
      const double v = nonzero_[p].first;
      if (!zeros_done && v > 0.0) {
        visit(0.0, zero_count, zero_sum);
        zeros_done = true;
      }
      std::size_t count = 0;
      double sum = 0.0;
      while (p < nonzero_.size() && nonzero_[p].first == v) {
        sum += nonzero_[p].second;
        ++count;
        ++p;
      }
      visit(v, count, sum);
    }
    if (!zeros_done) visit(0.0, zero_count, zero_sum);
  }

  static void consider(Split& best, double gain, std::size_t feature, double threshold) {
    if (!best.found) {
      best = {true, gain, feature, threshold};
      return;
    }
    const double tol = kGainTolerance * std::max(std::abs(gain), std::abs(best.gain));
    if (gain > best.gain + tol) {
      best = {true, gain, feature, threshold};
    } else if (gain >= best.gain - tol &&
               (feature < best.feature || (feature == best.feature && threshold < best.threshold))) {
      best = {true, std::max(gain, best.gain), feature, threshold};
    }
  }

  const FeatureMatrix& x_;
  std::span<const double> y_;
  const ForestConfig& config_;
  Rng rng_;
  std::vector<std::uint32_t> perm_;
  std::size_t max_features_ = 0;
  std::vector<std::uint32_t> samples_;
  std::vector<double> centered_;
  std::vector<std::pair<double, double>> nonzero_;
};

}  // namespace

Forest fit_forest(const FeatureMatrix& x, std::span<const double> y, const ForestConfig& config,
                  std::size_t threads) {
  config.validate();
  if (x.rows() != y.size()) {
    throw UsageError("feature matrix has " + std::to_string(x.rows()) + " rows but there are " +
                     std::to_string(y.size()) + " targets");
  }
  if (y.size() < 2) throw DataError("a forest needs at least 2 training rows");
  if (x.cols() == 0) throw DataError("feature matrix has no columns");
  if (!x.all_finite()) throw DataError("feature matrix contains non-finite values");
  for (double v : y) {
    if (!std::isfinite(v)) throw DataError("targets contain non-finite values");
  }
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());

  std::vector<RegressionTree> trees(config.n_trees);
  parallel_for(config.n_trees, threads, [&](std::size_t t) {
    TreeBuilder builder(x, y, config, derive_seed(config.seed, static_cast<std::uint64_t>(t)));
    trees[t] = builder.build();
  });
  return Forest(config, x.cols(), *lo, *hi, std::move(trees));
}

}  // namespace textrait
