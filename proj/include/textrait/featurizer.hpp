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

// Uniform wrapper over the five document representations so the experiment
// harness can fit, transform and persist any of them the same way.

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "textrait/corpus.hpp"
#include "textrait/doc2vec.hpp"
#include "textrait/embed.hpp"
#include "textrait/features.hpp"
#include "textrait/lda.hpp"
#include "textrait/lexicon.hpp"
#include "textrait/tfidf.hpp"

namespace textrait {

enum class FeaturizerKind { tfidf, lda, embed, doc2vec, lexicon };

std::string_view to_string(FeaturizerKind kind);
// Throws UsageError for unknown names.
FeaturizerKind parse_featurizer_kind(std::string_view name);
const std::vector<FeaturizerKind>& all_featurizer_kinds();

// Hyperparameters for every kind; only the block matching `kind` is used.
struct FeaturizerSpec {
  FeaturizerKind kind = FeaturizerKind::tfidf;
  TfidfOptions tfidf;
  LdaOptions lda;
  Doc2VecConfig doc2vec;
};

// Externally supplied tables. The embed kind requires `embeddings`, the
// lexicon kind requires `lexicon`.
struct FeaturizerResources {
  std::shared_ptr<const EmbeddingTable> embeddings;
  std::shared_ptr<const CategoryLexicon> lexicon;
};

class Featurizer {
 public:
  using State = std::variant<TfidfModel, TopicModel, std::shared_ptr<const EmbeddingTable>, Doc2VecModel,
                             std::shared_ptr<const CategoryLexicon>>;

  // The state alternative must match spec.kind; throws InvariantError
  // otherwise.
  Featurizer(FeaturizerSpec spec, State state);

  FeaturizerKind kind() const { return spec_.kind; }
  const FeaturizerSpec& spec() const { return spec_; }
  const State& state() const { return state_; }
  std::size_t dimension() const;

  // One feature row per record, in corpus order. Doc2vec rows come from
  // infer_vector with a per-record seed derived from the record id, so a
  // record maps to the same row whichever corpus it appears in.
  std::vector<double> transform(const ResponseRecord& record) const;
  FeatureMatrix transform(const Corpus& corpus, std::size_t threads = 1) const;

 private:
  FeaturizerSpec spec_;
  State state_;
};

// Fits the representation on `train` only. Throws UsageError when a
// required resource is missing.
Featurizer fit_featurizer(const FeaturizerSpec& spec, const FeaturizerResources& resources, const Corpus& train);

}  // namespace textrait
