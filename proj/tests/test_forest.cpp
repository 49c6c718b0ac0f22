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

#include <cmath>

#include "doctest.h"
#include "textrait/error.hpp"
#include "textrait/forest.hpp"
#include "textrait/metrics.hpp"
#include "textrait/random.hpp"

using namespace textrait;

namespace {

struct Data {
  FeatureMatrix x;
  std::vector<double> y;
};

// y = x . w + sigma * noise with x ~ U(0, 1).
Data linear(std::size_t n, std::size_t d, double sigma, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> w(d);
  for (auto& v : w) v = standard_normal(rng);
  Data out{FeatureMatrix(n, d), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      out.x(i, j) = uniform01(rng);
      s += out.x(i, j) * w[j];
    }
    out.y[i] = s + sigma * standard_normal(rng);
  }
  return out;
}

ForestConfig small(std::uint64_t seed) {
  ForestConfig c;
  c.n_trees = 20;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_SUITE("forest") {

TEST_CASE("max_features rules") {
  CHECK(MaxFeatures{}.resolve(10) == 3);
  CHECK(MaxFeatures{}.resolve(2) == 1);
  CHECK(MaxFeatures::parse("sqrt").resolve(10) == 3);
  CHECK(MaxFeatures::parse("all").resolve(10) == 10);
  CHECK(MaxFeatures::parse("4").resolve(10) == 4);
  CHECK(MaxFeatures::parse("40").resolve(10) == 10);
  CHECK(MaxFeatures::parse("7").to_string() == "7");
  CHECK_THROWS_AS(MaxFeatures::parse("0"), UsageError);
  CHECK_THROWS_AS(MaxFeatures::parse("most"), UsageError);
}

TEST_CASE("constant target predicts the constant exactly") {
  const Data d = linear(200, 5, 0.0, 1);
  const std::vector<double> y(200, 3.7);
  const Forest f = fit_forest(d.x, y, small(2));
  for (double p : f.predict(d.x)) CHECK(p == 3.7);
  for (const auto& t : f.trees()) CHECK(t.nodes.size() == 1);
}

TEST_CASE("a single unrestricted tree memorizes distinct points") {
  const Data d = linear(150, 4, 0.3, 2);
  ForestConfig c;
  c.n_trees = 1;
  c.bootstrap = false;
  c.min_samples_leaf = 1;
  c.max_features = MaxFeatures::parse("all");
  const Forest f = fit_forest(d.x, d.y, c);
  const auto p = f.predict(d.x);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(p[i] == d.y[i]);
}

TEST_CASE("predictions shift with the target") {
  const Data d = linear(300, 6, 0.5, 3);
  const Forest f = fit_forest(d.x, d.y, small(4));
  for (double c : {-7.5, 0.25, 1000.0}) {
    std::vector<double> y = d.y;
    for (auto& v : y) v += c;
    const Forest g = fit_forest(d.x, y, small(4));
    const auto a = f.predict(d.x);
    const auto b = g.predict(d.x);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(b[i] - a[i] - c) <= 1e-9);
  }
}

TEST_CASE("predictions stay inside the training target range") {
  const Data d = linear(200, 3, 0.2, 5);
  const Forest f = fit_forest(d.x, d.y, small(6));
  const Data probe = linear(200, 3, 0.0, 77);
  for (double p : f.predict(probe.x)) {
    CHECK(p >= f.y_min());
    CHECK(p <= f.y_max());
  }
}

TEST_CASE("tree count and thread count do not change the forest") {
  const Data d = linear(200, 5, 0.2, 8);
  const Forest a = fit_forest(d.x, d.y, small(9), 1);
  const Forest b = fit_forest(d.x, d.y, small(9), 4);
  CHECK(a == b);
  ForestConfig c = small(10);
  CHECK_FALSE(fit_forest(d.x, d.y, c) == a);
}

TEST_CASE("leaves respect min_samples_leaf and max_depth") {
  const Data d = linear(200, 4, 0.2, 11);
  ForestConfig c = small(12);
  c.bootstrap = false;
  c.min_samples_leaf = 20;
  c.max_depth = 3;
  const Forest f = fit_forest(d.x, d.y, c);
  for (const auto& t : f.trees()) {
    // A depth-3 binary tree has at most 15 nodes, and 200 / 20 caps leaves.
    CHECK(t.nodes.size() <= 15);
    std::size_t leaves = 0;
    for (const auto& n : t.nodes) leaves += n.feature < 0;
    CHECK(leaves <= 10);
  }
}

TEST_CASE("fits a noisy linear model") {
  const Data all = linear(800, 10, 0.1, 14);
  FeatureMatrix xtr(600, 10), xte(200, 10);
  std::vector<double> ytr(all.y.begin(), all.y.begin() + 600), yte(all.y.begin() + 600, all.y.end());
  for (std::size_t i = 0; i < 800; ++i) {
    for (std::size_t j = 0; j < 10; ++j) (i < 600 ? xtr(i, j) : xte(i - 600, j)) = all.x(i, j);
  }
  ForestConfig c;
  c.n_trees = 60;
  c.seed = 15;
  const Forest f = fit_forest(xtr, ytr, c);
  CHECK(pearson(f.predict(xte), yte).r >= 0.85);
}

TEST_CASE("input validation") {
  const Data d = linear(10, 2, 0.1, 16);
  CHECK_THROWS_AS(fit_forest(d.x, std::vector<double>(9), small(1)), UsageError);
  CHECK_THROWS_AS(fit_forest(FeatureMatrix(1, 2), std::vector<double>(1), small(1)), DataError);
  FeatureMatrix bad = d.x;
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(fit_forest(bad, d.y, small(1)), DataError);
  ForestConfig z = small(1);
  z.n_trees = 0;
  CHECK_THROWS_AS(z.validate(), UsageError);
  const Forest f = fit_forest(d.x, d.y, small(1));
  CHECK_THROWS_AS(f.predict(std::vector<double>{1.0}), UsageError);
  CHECK_THROWS_AS(Forest(small(1), 2, 0, 1, {RegressionTree{{TreeNode{0, 0.5, 0, 0, 0.0}}}}), DataError);
}

}  // TEST_SUITE
