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

#include "textrait/featurizer.hpp"

#include "textrait/error.hpp"
#include "textrait/parallel.hpp"
#include "textrait/random.hpp"

namespace textrait {

std::string_view to_string(FeaturizerKind kind) {
  switch (kind) {
    case FeaturizerKind::tfidf: return "tfidf";
    case FeaturizerKind::lda: return "lda";
    case FeaturizerKind::embed: return "embed";
    case FeaturizerKind::doc2vec: return "doc2vec";
    case FeaturizerKind::lexicon: return "lexicon";
  }
  return "tfidf";
}

FeaturizerKind parse_featurizer_kind(std::string_view name) {
  for (auto k : all_featurizer_kinds()) {
    if (to_string(k) == name) return k;
  }
  throw UsageError("unknown featurizer '" + std::string(name) + "' (expected tfidf, lda, embed, doc2vec or lexicon)");
}

const std::vector<FeaturizerKind>& all_featurizer_kinds() {
  static const std::vector<FeaturizerKind> kinds = {FeaturizerKind::tfidf, FeaturizerKind::lda,
                                                    FeaturizerKind::embed, FeaturizerKind::doc2vec,
                                                    FeaturizerKind::lexicon};
  return kinds;
}

Featurizer::Featurizer(FeaturizerSpec spec, State state) : spec_(std::move(spec)), state_(std::move(state)) {
  if (state_.index() != static_cast<std::size_t>(spec_.kind)) {
    throw InvariantError("featurizer state does not match kind " + std::string(to_string(spec_.kind)));
  }
  if (const auto* e = std::get_if<std::shared_ptr<const EmbeddingTable>>(&state_); e && !*e) {
    throw InvariantError("embed featurizer without a table");
  }
  if (const auto* l = std::get_if<std::shared_ptr<const CategoryLexicon>>(&state_); l && !*l) {
    throw InvariantError("lexicon featurizer without a lexicon");
  }
}

std::size_t Featurizer::dimension() const {
  switch (spec_.kind) {
    case FeaturizerKind::tfidf: return std::get<TfidfModel>(state_).dimension();
    case FeaturizerKind::lda: return std::get<TopicModel>(state_).topics();
    case FeaturizerKind::embed: return std::get<2>(state_)->dimension();
    case FeaturizerKind::doc2vec: return std::get<Doc2VecModel>(state_).dimension();
    case FeaturizerKind::lexicon: return std::get<4>(state_)->categories().size();
  }
  return 0;
}

std::vector<double> Featurizer::transform(const ResponseRecord& record) const {
  switch (spec_.kind) {
    case FeaturizerKind::tfidf:
      return std::get<TfidfModel>(state_).transform(record).to_dense();
    case FeaturizerKind::lda:
      return doc_topics(std::get<TopicModel>(state_), tokenize(record.text)).weights;
    case FeaturizerKind::embed:
      return doc_vector(*std::get<2>(state_), tokenize(record.text)).values;
    case FeaturizerKind::doc2vec: {
      const auto& model = std::get<Doc2VecModel>(state_);
      const auto seed = derive_seed(model.config().seed, "doc2vec.infer:" + record.id);
      return infer_vector(model, tokenize(record.text), model.config().infer_steps, seed).values;
    }
    case FeaturizerKind::lexicon:
      return category_frequencies(*std::get<4>(state_), tokenize(record.text));
  }
  return {};
}

FeatureMatrix Featurizer::transform(const Corpus& corpus, std::size_t threads) const {
  FeatureMatrix out(corpus.size(), dimension());
  std::vector<std::vector<double>> rows(corpus.size());
  parallel_for(corpus.size(), threads, [&](std::size_t i) { rows[i] = transform(corpus.records[i]); });
  for (std::size_t i = 0; i < rows.size(); ++i) out.set_row(i, rows[i]);
  return out;
}

Featurizer fit_featurizer(const FeaturizerSpec& spec, const FeaturizerResources& resources, const Corpus& train) {
  switch (spec.kind) {
    case FeaturizerKind::tfidf:
      return {spec, fit_tfidf(train, spec.tfidf)};
    case FeaturizerKind::lda:
      return {spec, fit_lda(train, spec.lda)};
    case FeaturizerKind::embed:
      if (!resources.embeddings) throw UsageError("the embed featurizer needs an embedding table");
      return {spec, Featurizer::State(std::in_place_index<2>, resources.embeddings)};
    case FeaturizerKind::doc2vec:
      return {spec, train_doc2vec(train, spec.doc2vec)};
    case FeaturizerKind::lexicon:
      if (!resources.lexicon) throw UsageError("the lexicon featurizer needs a category lexicon");
      return {spec, Featurizer::State(std::in_place_index<4>, resources.lexicon)};
  }
  throw InvariantError("unhandled featurizer kind");
}

}  // namespace textrait
