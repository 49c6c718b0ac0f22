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

#include <memory>

#include "textrait/analyze.hpp"
#include "textrait/synth.hpp"

namespace textrait::fixture {

// Small planted-signal corpus with matching embeddings and lexicon.
inline const SynthResult& small_synth() {
  static const SynthResult result = [] {
    SynthConfig c;
    c.n_docs = 160;
    c.length_mean = 60;
    c.length_sd = 15;
    c.noise_words = 120;
    c.embedding_dimension = 8;
    c.seed = 31;
    return generate(c);
  }();
  return result;
}

inline FeaturizerResources resources() {
  const auto& s = small_synth();
  return {std::make_shared<const EmbeddingTable>(s.embeddings), std::make_shared<const CategoryLexicon>(s.lexicon)};
}

// Hyperparameters small enough for unit tests.
inline FeaturizerSpec fast_spec(FeaturizerKind kind) {
  FeaturizerSpec s;
  s.kind = kind;
  s.tfidf.vocabulary.top_k = 100;
  s.lda.topics = 4;
  s.lda.iterations = 20;
  s.lda.seed = 3;
  s.doc2vec.dimension = 8;
  s.doc2vec.epochs = 2;
  s.doc2vec.infer_steps = 2;
  s.doc2vec.seed = 4;
  return s;
}

inline ForestConfig fast_forest() {
  ForestConfig f;
  f.n_trees = 10;
  f.seed = 5;
  return f;
}

}  // namespace textrait::fixture
