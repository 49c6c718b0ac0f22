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
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "support/oracles.hpp"
#include "textrait/error.hpp"
#include "textrait/lda.hpp"

using namespace textrait;

namespace {

// Two topics over {a, b}: topic 0 favours a, topic 1 favours b.
TopicModel toy_model() {
  LdaOptions opt;
  opt.topics = 2;
  return TopicModel({"a", "b"}, {0.75, 0.25, 0.25, 0.75}, {0.5, 0.5}, opt);
}

}  // namespace

TEST_SUITE("lda") {

TEST_CASE("doc_topics hand example") {
  // p(0 | a) = 0.75, p(0 | b) = 0.25; "a a b" gives 2/3 * 0.75 + 1/3 * 0.25.
  const DocTopics t = doc_topics(toy_model(), TokenStream{"a", "a", "b", "zzz"});
  CHECK(t.weights[0] == doctest::Approx(7.0 / 12.0).epsilon(1e-15));
  CHECK(t.weights[1] == doctest::Approx(5.0 / 12.0).epsilon(1e-15));
  CHECK_FALSE(t.out_of_vocabulary);
}

TEST_CASE("out-of-vocabulary documents get uniform weights") {
  const DocTopics t = doc_topics(toy_model(), TokenStream{"q"});
  CHECK(t.out_of_vocabulary);
  CHECK(t.weights == std::vector<double>{0.5, 0.5});
}

TEST_CASE("constructor rejects unnormalized state") {
  LdaOptions opt;
  opt.topics = 2;
  CHECK_THROWS_AS(TopicModel({"a", "b"}, {0.7, 0.2, 0.5, 0.5}, {0.5, 0.5}, opt), DataError);
  CHECK_THROWS_AS(TopicModel({"a", "b"}, {0.5, 0.5, 0.5, 0.5}, {0.9, 0.2}, opt), DataError);
  CHECK_THROWS_AS(TopicModel({"a", "b"}, {0.5, 0.5}, {0.5, 0.5}, opt), DataError);
}

TEST_CASE("fitted model satisfies normalization and matches the inference oracle") {
  const auto planted = oracle::planted_topics(90, 30, 3);
  LdaOptions opt;
  opt.topics = 4;
  opt.iterations = 60;
  opt.seed = 11;
  const TopicModel m = fit_lda(planted.docs, opt);
  CHECK(std::is_sorted(m.terms().begin(), m.terms().end()));
  double prior_sum = 0.0;
  for (std::size_t k = 0; k < m.topics(); ++k) {
    const auto row = m.phi_row(k);
    CHECK(std::accumulate(row.begin(), row.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    for (double p : row) CHECK(p > 0.0);
    prior_sum += m.topic_prior()[k];
  }
  CHECK(prior_sum == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<std::vector<double>> phi(m.topics(), std::vector<double>(m.vocabulary_size()));
  std::map<std::string, std::size_t> vocab;
  for (std::size_t t = 0; t < m.vocabulary_size(); ++t) vocab[m.terms()[t]] = t;
  for (std::size_t k = 0; k < m.topics(); ++k) {
    for (std::size_t t = 0; t < m.vocabulary_size(); ++t) phi[k][t] = m.phi(k, t);
  }
  for (std::size_t d = 0; d < 10; ++d) {
    const auto got = doc_topics(m, planted.docs[d]).weights;
    const auto want = oracle::doc_topics_oracle(phi, m.topic_prior(), vocab, planted.docs[d]);
    for (std::size_t k = 0; k < got.size(); ++k) CHECK(std::abs(got[k] - want[k]) <= 1e-12);
    CHECK(std::accumulate(got.begin(), got.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("same seed, same model") {
  const auto planted = oracle::planted_topics(30, 20, 4);
  LdaOptions opt;
  opt.topics = 3;
  opt.iterations = 20;
  opt.seed = 5;
  const TopicModel a = fit_lda(planted.docs, opt);
  const TopicModel b = fit_lda(planted.docs, opt);
  CHECK(a.phi_matrix() == b.phi_matrix());
  opt.seed = 6;
  CHECK(fit_lda(planted.docs, opt).phi_matrix() != a.phi_matrix());
}

TEST_CASE("planted topics are recovered on a small corpus") {
  const auto planted = oracle::planted_topics(150, 40, 8);
  LdaOptions opt;
  opt.topics = 3;
  opt.iterations = 200;
  opt.seed = 2;
  const TopicModel m = fit_lda(planted.docs, opt);
  std::vector<std::vector<double>> learned(3, std::vector<double>(30, 0.0));
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t w = 0; w < 30; ++w) {
      if (auto t = m.term_index("t" + std::to_string(w))) learned[k][w] = m.phi(k, *t);
    }
  }
  for (double c : oracle::greedy_match(planted.topics, learned)) CHECK(c >= 0.6);
}

TEST_CASE("argument errors") {
  LdaOptions opt;
  opt.topics = 1;
  CHECK_THROWS_AS(fit_lda(std::vector<TokenStream>{{"a"}}, opt), UsageError);
  opt.topics = 2;
  opt.beta = 0.0;
  CHECK_THROWS_AS(fit_lda(std::vector<TokenStream>{{"a"}}, opt), UsageError);
  opt.beta = 0.01;
  CHECK_THROWS_AS(fit_lda(std::vector<TokenStream>{{}, {}}, opt), DataError);
  CHECK_THROWS_AS(top_terms(toy_model(), 2, 1), UsageError);
}

TEST_CASE("top terms are ordered by phi") {
  const auto top = top_terms(toy_model(), 1, 2);
  REQUIRE(top.size() == 2);
  CHECK(top[0].term == "b");
  CHECK(top[1].term == "a");
}

TEST_CASE("topic correlations and report files") {
  Corpus c;
  const char* texts[] = {"a a a b", "a b b b", "a a b b", "b b b b", "a a a a"};
  for (int i = 0; i < 5; ++i) {
    ResponseRecord r;
    r.id = "d" + std::to_string(i);
    r.text = texts[i];
    r.items = {1 + i};
    c.records.push_back(r);
  }
  const TopicReport rep = topic_correlations(toy_model(), c, 2);
  REQUIRE(rep.topics.size() == 2);
  REQUIRE(rep.topics[0].correlation);
  // The two topic weights are complementary, so their correlations mirror.
  CHECK(rep.topics[0].correlation->r == doctest::Approx(-rep.topics[1].correlation->r).epsilon(1e-12));
  std::ostringstream cloud, summary;
  write_word_cloud_csv(rep, cloud);
  write_topic_report_csv(rep, summary);
  CHECK(cloud.str().rfind("topic,term,weight\n", 0) == 0);
  CHECK(summary.str().rfind("topic,r,p,n,extreme\n", 0) == 0);
}

}  // TEST_SUITE
