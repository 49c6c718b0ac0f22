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

#include "textrait/lda.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "textrait/csv.hpp"
#include "textrait/error.hpp"
#include "textrait/kernels.hpp"
#include "textrait/random.hpp"

namespace textrait {

TopicModel::TopicModel(std::vector<std::string> terms, std::vector<double> phi,
                       std::vector<double> topic_prior, LdaOptions options)
    : terms_(std::move(terms)),
      phi_(std::move(phi)),
      topic_prior_(std::move(topic_prior)),
      options_(std::move(options)) {
  const std::size_t k = topic_prior_.size();
  const std::size_t v = terms_.size();
  if (k < 2) throw DataError("topic model needs at least 2 topics");
  if (v == 0) throw DataError("topic model has an empty vocabulary");
  if (phi_.size() != k * v) throw DataError("topic model phi has the wrong shape");
  if (!std::is_sorted(terms_.begin(), terms_.end())) throw DataError("topic model terms must be sorted");
  constexpr double kTol = 1e-9;
  for (std::size_t t = 0; t < k; ++t) {
    double s = 0.0;
    for (double p : phi_row(t)) {
      if (!(p >= 0.0)) throw DataError("topic model phi has a negative entry");
      s += p;
    }
    if (std::fabs(s - 1.0) > kTol) {
      throw DataError("phi row " + std::to_string(t) + " sums to " + std::to_string(s));
    }
  }
  const double prior_sum = std::accumulate(topic_prior_.begin(), topic_prior_.end(), 0.0);
  if (std::fabs(prior_sum - 1.0) > kTol ||
      std::any_of(topic_prior_.begin(), topic_prior_.end(), [](double p) { return !(p >= 0.0); })) {
    throw DataError("topic prior is not a probability vector");
  }
  index_.reserve(v);
  for (std::size_t i = 0; i < v; ++i) index_.emplace(terms_[i], i);
  if (index_.size() != v) throw DataError("topic model terms are not unique");
}

std::optional<std::size_t> TopicModel::term_index(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TopicModel fit_lda(std::span<const TokenStream> docs, const LdaOptions& options) {
  const std::size_t k = options.topics;
  if (k < 2) throw UsageError("LDA needs at least 2 topics");
  const double alpha = options.effective_alpha();
  const double beta = options.beta;
  if (!(alpha > 0.0) || !(beta > 0.0)) throw UsageError("LDA priors alpha and beta must be > 0");
  if (docs.empty()) throw DataError("cannot fit LDA on an empty corpus");

  std::set<std::string> term_set;
  for (const auto& d : docs) term_set.insert(d.begin(), d.end());
  if (term_set.empty()) throw DataError("cannot fit LDA: corpus has no tokens");
  std::vector<std::string> terms(term_set.begin(), term_set.end());
  std::unordered_map<std::string, std::int32_t> index;
  for (std::size_t i = 0; i < terms.size(); ++i) index.emplace(terms[i], static_cast<std::int32_t>(i));
  const std::size_t v = terms.size();

  // Flattened corpus: word ids and topic assignments, with per-doc offsets.
  std::vector<std::int32_t> words;
  std::vector<std::size_t> offsets{0};
  for (const auto& d : docs) {
    for (const auto& t : d) words.push_back(index.at(t));
    offsets.push_back(words.size());
  }
  const std::size_t n_tokens = words.size();

  std::vector<std::int32_t> z(n_tokens);
  std::vector<std::int32_t> doc_topic(docs.size() * k, 0);
  std::vector<std::int32_t> word_topic(v * k, 0);  // word-major so one word's counts are contiguous
  std::vector<std::int32_t> topic_total(k, 0);

  Rng rng(options.seed);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (std::size_t i = offsets[d]; i < offsets[d + 1]; ++i) {
      const auto topic = static_cast<std::int32_t>(uniform_index(rng, k));
      z[i] = topic;
      ++doc_topic[d * k + topic];
      ++word_topic[static_cast<std::size_t>(words[i]) * k + topic];
      ++topic_total[topic];
    }
  }

  const kernels::Table& kern = kernels::active();
  const double vbeta = static_cast<double>(v) * beta;
  std::vector<double> weights(k);
  for (std::size_t iter = 0; iter < options.iterations; ++iter) {
    for (std::size_t d = 0; d < docs.size(); ++d) {
      std::int32_t* dt = doc_topic.data() + d * k;
      for (std::size_t i = offsets[d]; i < offsets[d + 1]; ++i) {
        std::int32_t* wt = word_topic.data() + static_cast<std::size_t>(words[i]) * k;
        const std::int32_t old = z[i];
        --dt[old];
        --wt[old];
        --topic_total[old];

        kern.topic_weights(dt, wt, topic_total.data(), alpha, beta, vbeta, weights.data(), k);
        double total = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
          total += weights[j];
          weights[j] = total;
        }
        const double u = uniform01(rng) * total;
        const auto chosen = static_cast<std::int32_t>(
            std::min<std::size_t>(std::upper_bound(weights.begin(), weights.end(), u) - weights.begin(),
                                  k - 1));
        z[i] = chosen;
        ++dt[chosen];
        ++wt[chosen];
        ++topic_total[chosen];
      }
    }
  }

  std::vector<double> phi(k * v);
  for (std::size_t t = 0; t < k; ++t) {
    const double denom = static_cast<double>(topic_total[t]) + vbeta;
    for (std::size_t w = 0; w < v; ++w) {
      phi[t * v + w] = (static_cast<double>(word_topic[w * k + t]) + beta) / denom;
    }
  }
  std::vector<double> prior(k);
  for (std::size_t t = 0; t < k; ++t) {
    prior[t] = static_cast<double>(topic_total[t]) / static_cast<double>(n_tokens);
  }
  return TopicModel(std::move(terms), std::move(phi), std::move(prior), options);
}

TopicModel fit_lda(const Corpus& train, const LdaOptions& options) {
  std::vector<TokenStream> docs;
  docs.reserve(train.size());
  for (const auto& r : train.records) docs.push_back(tokenize(r.text));
  return fit_lda(docs, options);
}

DocTopics doc_topics(const TopicModel& model, std::span<const std::string> tokens) {
  const std::size_t k = model.topics();
  DocTopics out;
  out.weights.assign(k, 0.0);

  std::map<std::size_t, std::size_t> counts;  // ordered: summation order is token-order independent
  std::size_t in_vocab = 0;
  for (const auto& t : tokens) {
    if (auto i = model.term_index(t)) {
      ++counts[*i];
      ++in_vocab;
    }
  }
  if (in_vocab == 0) {
    out.weights.assign(k, 1.0 / static_cast<double>(k));
    out.out_of_vocabulary = true;
    return out;
  }
  const auto& prior = model.topic_prior();
  std::vector<double> joint(k);
  for (auto [term, count] : counts) {
    double evidence = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      joint[j] = model.phi(j, term) * prior[j];
      evidence += joint[j];
    }
    const double p_term = static_cast<double>(count) / static_cast<double>(in_vocab);
    for (std::size_t j = 0; j < k; ++j) out.weights[j] += joint[j] / evidence * p_term;
  }
  return out;
}

std::vector<TermWeight> top_terms(const TopicModel& model, std::size_t topic, std::size_t n) {
  if (topic >= model.topics()) {
    throw UsageError("topic " + std::to_string(topic) + " out of range (K=" +
                     std::to_string(model.topics()) + ")");
  }
  const auto row = model.phi_row(topic);
  std::vector<std::size_t> order(row.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t keep = std::min(n, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (row[a] != row[b]) return row[a] > row[b];
                      return a < b;
                    });
  std::vector<TermWeight> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) out.push_back({model.terms()[order[i]], row[order[i]]});
  return out;
}

TopicReport topic_correlations(const TopicModel& model, const Corpus& corpus, std::size_t top_n) {
  if (corpus.size() < 3) throw UsageError("topic correlations need at least 3 documents");
  const std::size_t k = model.topics();
  std::vector<double> scores;
  std::vector<std::vector<double>> columns(k);
  scores.reserve(corpus.size());
  for (const auto& r : corpus.records) {
    scores.push_back(target_score(r));
    const auto dt = doc_topics(model, tokenize(r.text));
    for (std::size_t j = 0; j < k; ++j) columns[j].push_back(dt.weights[j]);
  }

  TopicReport report;
  for (std::size_t j = 0; j < k; ++j) {
    TopicCorrelation tc;
    tc.topic = j;
    try {
      tc.correlation = pearson(columns[j], scores);
    } catch (const DataError&) {
      // constant column or constant scores: r undefined
    }
    tc.top_terms = top_terms(model, j, top_n);
    if (tc.correlation) {
      const double r = tc.correlation->r;
      if (!report.most_positive || r > report.topics[*report.most_positive].correlation->r) {
        report.most_positive = j;
      }
      if (!report.most_negative || r < report.topics[*report.most_negative].correlation->r) {
        report.most_negative = j;
      }
    }
    report.topics.push_back(std::move(tc));
  }
  return report;
}

void write_word_cloud_csv(const TopicReport& report, std::ostream& out) {
  csv::write_row(out, {"topic", "term", "weight"});
  for (const auto& tc : report.topics) {
    for (const auto& tw : tc.top_terms) {
      csv::write_row(out, {std::to_string(tc.topic), tw.term, csv::format_double(tw.weight)});
    }
  }
}

void write_topic_report_csv(const TopicReport& report, std::ostream& out) {
  csv::write_row(out, {"topic", "r", "p", "n", "extreme"});
  for (const auto& tc : report.topics) {
    std::string extreme;
    if (report.most_positive == tc.topic) extreme = "most_positive";
    if (report.most_negative == tc.topic) extreme = "most_negative";
    if (tc.correlation) {
      csv::write_row(out, {std::to_string(tc.topic), csv::format_double(tc.correlation->r),
                           csv::format_double(tc.correlation->p_two_sided),
                           std::to_string(tc.correlation->n), extreme});
    } else {
      csv::write_row(out, {std::to_string(tc.topic), "", "", "", extreme});
    }
  }
}

}  // namespace textrait
