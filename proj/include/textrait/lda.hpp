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

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "textrait/corpus.hpp"
#include "textrait/metrics.hpp"
#include "textrait/text.hpp"

namespace textrait {

struct LdaOptions {
  std::size_t topics = 100;
  std::optional<double> alpha;  // symmetric document-topic prior, default 50 / topics
  double beta = 0.01;           // symmetric topic-word prior
  std::size_t iterations = 1000;
  std::uint64_t seed = 0;

  double effective_alpha() const { return alpha.value_or(50.0 / static_cast<double>(topics)); }
};

// Topic-word distributions estimated from the final Gibbs state:
//   phi[k][t] = (c_kt + beta) / (c_k + |V| beta)
// and the topic prior p(k) = c_k / total tokens.
class TopicModel {
 public:
  TopicModel() = default;
  // Validates shapes and normalization; throws DataError on violation.
  TopicModel(std::vector<std::string> terms, std::vector<double> phi, std::vector<double> topic_prior,
             LdaOptions options);

  std::size_t topics() const { return topic_prior_.size(); }
  std::size_t vocabulary_size() const { return terms_.size(); }
  const std::vector<std::string>& terms() const { return terms_; }
  std::optional<std::size_t> term_index(std::string_view term) const;

  double phi(std::size_t topic, std::size_t term) const { return phi_[topic * terms_.size() + term]; }
  std::span<const double> phi_row(std::size_t topic) const {
    return {phi_.data() + topic * terms_.size(), terms_.size()};
  }
  const std::vector<double>& phi_matrix() const { return phi_; }  // row-major K x |V|
  const std::vector<double>& topic_prior() const { return topic_prior_; }
  const LdaOptions& options() const { return options_; }

 private:
  std::vector<std::string> terms_;  // sorted
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> phi_;
  std::vector<double> topic_prior_;
  LdaOptions options_;
};

// Collapsed Gibbs sampling over unigram tokens. Deterministic given
// options.seed. Throws UsageError for topics < 2 or non-positive priors,
// DataError when the corpus has no tokens.
TopicModel fit_lda(std::span<const TokenStream> docs, const LdaOptions& options);
TopicModel fit_lda(const Corpus& train, const LdaOptions& options);

struct DocTopics {
  std::vector<double> weights;     // length K, sums to 1
  bool out_of_vocabulary = false;  // no token in the model vocabulary; weights uniform
};

// p(k | r) = sum_t p(k | t) p(t | r), where p(t | r) is the relative
// frequency of t among in-vocabulary tokens of r and
// p(k | t) = phi[k][t] p(k) / sum_j phi[j][t] p(j).
DocTopics doc_topics(const TopicModel& model, std::span<const std::string> tokens);

struct TermWeight {
  std::string term;
  double weight = 0.0;
};

// n highest-phi terms of a topic, descending; ties by term order. Throws
// UsageError when topic >= K.
std::vector<TermWeight> top_terms(const TopicModel& model, std::size_t topic, std::size_t n);

struct TopicCorrelation {
  std::size_t topic = 0;
  std::optional<CorrelationResult> correlation;  // empty when the topic column is constant
  std::vector<TermWeight> top_terms;
};

struct TopicReport {
  std::vector<TopicCorrelation> topics;
  std::optional<std::size_t> most_positive;
  std::optional<std::size_t> most_negative;
};

// Pearson r between each topic's doc_topics weight and the target score.
// Throws UsageError for fewer than 3 documents.
TopicReport topic_correlations(const TopicModel& model, const Corpus& corpus, std::size_t top_n = 10);

// `topic,term,weight` rows for every topic's top terms.
void write_word_cloud_csv(const TopicReport& report, std::ostream& out);
// `topic,r,p,n,extreme` rows, extreme naming the most positive and most
// negative topic; topics with undefined r have empty r, p and n.
void write_topic_report_csv(const TopicReport& report, std::ostream& out);

}  // namespace textrait
