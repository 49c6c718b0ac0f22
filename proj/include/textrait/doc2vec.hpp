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

// Paragraph vectors, distributed-memory variant (PV-DM), trained with
// negative sampling.
//
// For target word t at position i of document d the hidden vector is the
// mean of the document vector and the word vectors of the `window` words on
// each side:
//
//   h = (D[d] + sum_j W[c_j]) / (1 + |c|)
//
// and the loss is the logistic loss of one positive and `negative` sampled
// output words:
//
//   L = -log s(h . O[t]) - sum_n log s(-h . O[n]),   s = logistic sigmoid.
//
// Negatives are drawn from the unigram distribution raised to 0.75.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "textrait/corpus.hpp"
#include "textrait/text.hpp"

namespace textrait {

struct Doc2VecConfig {
  std::size_t dimension = 100;
  std::size_t window = 5;
  std::size_t negative = 5;
  std::size_t epochs = 10;
  double lr_start = 0.025;
  double lr_end = 0.0001;
  std::size_t min_count = 1;
  std::size_t infer_steps = 10;  // passes over a document in infer_vector
  std::uint64_t seed = 0;
};

// Row-major matrix of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
  bool all_finite() const;
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

class Doc2VecModel {
 public:
  Doc2VecModel() = default;
  // Validates shapes, counts and finiteness; throws DataError on violation.
  Doc2VecModel(Doc2VecConfig config, std::vector<std::string> words, std::vector<std::size_t> counts,
               Matrix doc_matrix, Matrix word_matrix, Matrix output_matrix);

  const Doc2VecConfig& config() const { return config_; }
  std::size_t dimension() const { return config_.dimension; }
  const std::vector<std::string>& words() const { return words_; }
  const std::vector<std::size_t>& counts() const { return counts_; }
  std::optional<std::size_t> word_index(std::string_view word) const;

  const Matrix& doc_matrix() const { return doc_; }
  const Matrix& word_matrix() const { return word_; }
  const Matrix& output_matrix() const { return output_; }
  Matrix& doc_matrix() { return doc_; }
  Matrix& word_matrix() { return word_; }
  Matrix& output_matrix() { return output_; }

  // Draws a negative-sample word index from u in [0, 1).
  std::size_t sample_negative(double u) const;

  // Mean training loss per predicted position for each completed epoch.
  const std::vector<double>& epoch_loss() const { return epoch_loss_; }
  void record_epoch_loss(double loss) { epoch_loss_.push_back(loss); }

  // Tokens mapped to vocabulary indices, unknown tokens dropped.
  std::vector<std::size_t> encode(std::span<const std::string> tokens) const;

 private:
  Doc2VecConfig config_;
  std::vector<std::string> words_;  // descending count, ties by word
  std::vector<std::size_t> counts_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> noise_cdf_;
  Matrix doc_;
  Matrix word_;
  Matrix output_;
  std::vector<double> epoch_loss_;
};

// Called after every epoch with the model so far.
using Doc2VecObserver = std::function<void(const Doc2VecModel& model, std::size_t epoch)>;

// Single-threaded SGD; deterministic given config.seed. Throws UsageError
// for dimension < 2, DataError when no word reaches min_count.
Doc2VecModel train_doc2vec(std::span<const TokenStream> docs, const Doc2VecConfig& config,
                           const Doc2VecObserver& observer = {});
Doc2VecModel train_doc2vec(const Corpus& train, const Doc2VecConfig& config,
                           const Doc2VecObserver& observer = {});

struct InferredVector {
  std::vector<double> values;
  bool empty = false;  // no in-vocabulary token: values are zero
};

// Fits a fresh document vector with word and output matrices frozen. The
// vector starts from a seeded uniform draw in (-0.5, 0.5) / d; steps = 0
// returns that draw unchanged.
InferredVector infer_vector(const Doc2VecModel& model, std::span<const std::string> tokens,
                            std::size_t steps, std::uint64_t seed);

// Mean loss over every position of docs (doc i is model document i), with
// negatives drawn from a stream seeded by `seed`, so repeated calls score the
// same fixed batch.
double evaluate_loss(const Doc2VecModel& model, std::span<const TokenStream> docs, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Gradient verification
// ---------------------------------------------------------------------------

// Frozen parameters for one prediction: the document vector, the context
// word vectors and the output vectors of the positive (first) and negative
// words.
struct ContextSample {
  std::vector<double> doc;
  std::vector<std::vector<double>> context;
  std::vector<std::vector<double>> outputs;
  std::vector<int> labels;  // 1 for the positive word, 0 for negatives
};

struct SampleGradient {
  std::vector<double> doc;
  std::vector<std::vector<double>> context;
  std::vector<std::vector<double>> outputs;
};

double sample_loss(const ContextSample& sample);
SampleGradient sample_gradient(const ContextSample& sample);

// Copies the parameters touched by predicting `target` from `context` in
// document `doc` with the given negatives.
ContextSample make_sample(const Doc2VecModel& model, std::size_t doc,
                          std::span<const std::size_t> context, std::size_t target,
                          std::span<const std::size_t> negatives);

using GradientFn = std::function<SampleGradient(const ContextSample&)>;

// Max relative error between `gradient` and central finite differences of
// sample_loss over every doc, context and output parameter. Relative error
// is |a - n| / max(|a|, |n|), or |a - n| when both magnitudes are below
// 1e-7.
double gradient_check(const ContextSample& sample, const GradientFn& gradient = sample_gradient,
                      double step = 1e-4);

}  // namespace textrait
