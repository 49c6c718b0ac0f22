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

#include <span>
#include <string>
#include <vector>

#include "textrait/corpus.hpp"
#include "textrait/features.hpp"
#include "textrait/text.hpp"

namespace textrait {

struct TfidfOptions {
  VocabularyOptions vocabulary;  // top_k 2000 over orders {1, 2, 3} by default
  StopwordSet stopwords;         // empty: no removal
};

// idf(t) = ln(|R| / (n_t + 1)) + 1, with n_t the number of training
// documents containing t.
double inverse_document_frequency(std::size_t corpus_size, std::size_t document_frequency);

// Fitted TF-IDF vectorizer. The idf vector is derived from the vocabulary's
// document frequencies and the training corpus size, so it cannot drift from
// them.
class TfidfModel {
 public:
  TfidfModel() = default;
  TfidfModel(Vocabulary vocabulary, std::size_t corpus_size, TfidfOptions options);

  const Vocabulary& vocabulary() const { return vocabulary_; }
  const std::vector<double>& idf() const { return idf_; }
  std::size_t corpus_size() const { return corpus_size_; }
  const TfidfOptions& options() const { return options_; }
  std::size_t dimension() const { return vocabulary_.size(); }

  // Entry for term t of order n:
  //   tf(t, r) * idf(t),  tf(t, r) = count of t in r / number of order-n slots in r.
  // Terms outside the vocabulary are ignored; an empty document maps to the
  // zero vector.
  SparseVector transform(std::span<const std::string> tokens) const;
  SparseVector transform(const ResponseRecord& record) const;

 private:
  Vocabulary vocabulary_;
  std::vector<double> idf_;
  std::size_t corpus_size_ = 0;
  TfidfOptions options_;
};

// Builds the vocabulary and document frequencies from the training side
// only. Throws UsageError for an empty corpus.
TfidfModel fit_tfidf(std::span<const TokenStream> train_docs, const TfidfOptions& options);
TfidfModel fit_tfidf(const Corpus& train, const TfidfOptions& options);

}  // namespace textrait
