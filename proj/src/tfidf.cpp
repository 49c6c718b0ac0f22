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

#include "textrait/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "textrait/error.hpp"

namespace textrait {

double inverse_document_frequency(std::size_t corpus_size, std::size_t document_frequency) {
  return std::log(static_cast<double>(corpus_size) / static_cast<double>(document_frequency + 1)) +
         1.0;
}

TfidfModel::TfidfModel(Vocabulary vocabulary, std::size_t corpus_size, TfidfOptions options)
    : vocabulary_(std::move(vocabulary)), corpus_size_(corpus_size), options_(std::move(options)) {
  if (corpus_size_ == 0) throw UsageError("TF-IDF corpus size must be >= 1");
  idf_.reserve(vocabulary_.size());
  for (const auto& e : vocabulary_.entries()) {
    if (e.document_frequency == 0) throw DataError("vocabulary entry '" + e.ngram + "' has df 0");
    idf_.push_back(inverse_document_frequency(corpus_size_, e.document_frequency));
  }
}

SparseVector TfidfModel::transform(std::span<const std::string> raw_tokens) const {
  SparseVector out;
  out.dim = vocabulary_.size();
  TokenStream tokens = remove_stopwords({raw_tokens.begin(), raw_tokens.end()}, options_.stopwords);

  // Position -> raw count, ordered so the output is sorted by position.
  std::map<std::uint32_t, std::size_t> counts;
  for (int n : options_.vocabulary.orders.list()) {
    for (const auto& g : ngrams(tokens, OrderSet{n})) {
      if (auto pos = vocabulary_.find(g)) ++counts[static_cast<std::uint32_t>(*pos)];
    }
  }
  out.index.reserve(counts.size());
  out.value.reserve(counts.size());
  for (auto [pos, count] : counts) {
    const auto order = static_cast<std::size_t>(vocabulary_[pos].order);
    const std::size_t slots = tokens.size() - order + 1;  // > 0 since the n-gram occurred
    const double tf = static_cast<double>(count) / static_cast<double>(slots);
    out.index.push_back(pos);
    out.value.push_back(tf * idf_[pos]);
  }
  return out;
}

SparseVector TfidfModel::transform(const ResponseRecord& record) const {
  return transform(tokenize(record.text));
}

TfidfModel fit_tfidf(std::span<const TokenStream> train_docs, const TfidfOptions& options) {
  if (train_docs.empty()) throw UsageError("cannot fit TF-IDF on an empty corpus");
  std::vector<TokenStream> docs;
  docs.reserve(train_docs.size());
  for (const auto& d : train_docs) docs.push_back(remove_stopwords(d, options.stopwords));
  return TfidfModel(build_vocabulary(docs, options.vocabulary), docs.size(), options);
}

TfidfModel fit_tfidf(const Corpus& train, const TfidfOptions& options) {
  std::vector<TokenStream> docs;
  docs.reserve(train.size());
  for (const auto& r : train.records) docs.push_back(tokenize(r.text));
  return fit_tfidf(docs, options);
}

}  // namespace textrait
