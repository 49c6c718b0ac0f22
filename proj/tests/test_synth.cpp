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
#include <set>

#include "doctest.h"
#include "textrait/error.hpp"
#include "textrait/metrics.hpp"
#include "textrait/synth.hpp"
#include "textrait/text.hpp"

using namespace textrait;

namespace {

SynthResult run(double strength, std::size_t n, std::uint64_t seed = 1) {
  SynthConfig c;
  c.signal_strength = strength;
  c.n_docs = n;
  c.seed = seed;
  return generate(c);
}

}  // namespace

TEST_SUITE("synth") {

TEST_CASE("pseudo-words are distinct and tokenizer-stable") {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < 3000; ++i) {
    const std::string w = synth_word(i);
    CHECK(seen.insert(w).second);
    CHECK(tokenize(w) == TokenStream{w});
  }
}

TEST_CASE("config validation") {
  SynthConfig c;
  c.signal_strength = 1.5;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = SynthConfig{};
  c.genders = {{"female", 0.7, 0.0}, {"male", 0.2, 0.0}};
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = SynthConfig{};
  c.signal_words = 0;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = SynthConfig{};
  c.base_signal_rate = 0.6;
  CHECK_THROWS_AS(c.validate(), UsageError);
}

TEST_CASE("same seed, same corpus") {
  const auto a = run(0.5, 300, 4), b = run(0.5, 300, 4), c = run(0.5, 300, 5);
  CHECK(serialize(a.corpus) == serialize(b.corpus));
  CHECK(serialize(a.corpus) != serialize(c.corpus));
}

TEST_CASE("embeddings and lexicon cover the vocabulary") {
  const auto r = run(1.0, 200);
  for (const auto& rec : r.corpus.records) {
    for (const auto& t : tokenize(rec.text)) CHECK(r.embeddings.find(t) != nullptr);
  }
  CHECK(r.lexicon.match(synth_word(0)) == std::vector<std::size_t>{0});
}

TEST_CASE("targets lie on the Likert scale and track the latent score") {
  const auto r = run(1.0, 500);
  std::vector<double> y;
  for (const auto& rec : r.corpus.records) {
    const double s = target_score(rec);
    CHECK((s >= 1.0 && s <= 5.0));
    y.push_back(s);
  }
  CHECK(pearson(r.latent, y).r > 0.8);
}

TEST_CASE("oracle r: null, strong and monotone in strength") {
  CHECK(std::abs(run(0.0, 2000).oracle_r) < 0.05);
  CHECK(run(1.0, 2000).oracle_r >= 0.8);
  double last = -1.0;
  for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const double r = run(s, 2000).oracle_r;
    CHECK(r >= last);
    last = r;
  }
}

TEST_CASE("groups without shifts are balanced, shifted groups are not") {
  auto d_for = [](double shift) {
    SynthConfig c;
    c.n_docs = 10000;
    c.seed = 3;
    c.genders = {{"female", 0.5, shift}, {"male", 0.5, 0.0}};
    const auto r = generate(c);
    std::vector<double> f, m;
    for (const auto& rec : r.corpus.records) (rec.gender == Gender::female ? f : m).push_back(target_score(rec));
    return cohens_d(f, m);
  };
  CHECK(std::abs(d_for(0.0)) < 0.05);
  CHECK(d_for(0.5) > 0.2);
}

}  // TEST_SUITE
