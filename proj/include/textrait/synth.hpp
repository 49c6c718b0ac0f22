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

// Synthetic labeled corpus with a planted lexical signal. Each document has
// a latent score u ~ Uniform[1, 5] (plus optional group shifts, clamped).
// Every token is a signal word with probability
//
//   p(u) = p0 * (1 + strength * (u - 3) / 2)
//
// and a noise word otherwise, so the realized signal-word fraction tracks u
// when strength > 0 and is independent of it when strength = 0. Likert items
// are round(u + noise) clamped to 1..5.

#include <cstdint>
#include <string>
#include <vector>

#include "textrait/corpus.hpp"
#include "textrait/embed.hpp"
#include "textrait/lexicon.hpp"

namespace textrait {

struct SynthGroup {
  std::string label;
  double proportion = 0.0;
  double shift = 0.0;  // added to u before clamping
};

struct SynthConfig {
  std::size_t n_docs = 2000;
  std::size_t signal_words = 20;
  std::size_t noise_words = 500;
  double length_mean = 200.0;
  double length_sd = 60.0;
  std::size_t min_doc_length = 5;
  double length_slope = 0.0;  // mean length change per unit of (u - 3)
  double signal_strength = 1.0;
  double base_signal_rate = 0.3;  // p0
  std::size_t items = 6;
  double item_noise = 0.5;
  std::size_t embedding_dimension = 50;
  double embedding_signal = 1.0;  // norm of the direction shared by signal words
  std::vector<SynthGroup> genders{{"female", 0.5, 0.0}, {"male", 0.5, 0.0}};
  std::vector<SynthGroup> job_families{{"engineering", 1.0 / 3, 0.0}, {"sales", 1.0 / 3, 0.0},
                                       {"support", 1.0 / 3, 0.0}};
  std::uint64_t seed = 0;

  // Throws UsageError for proportions not summing to 1, strength outside
  // [0, 1], empty vocabularies or p0 * (1 + strength) > 1.
  void validate() const;
};

struct SynthResult {
  Corpus corpus;
  EmbeddingTable embeddings;  // covers every synthetic word
  CategoryLexicon lexicon;    // category 1 = signal words, 2..3 = noise
  std::vector<double> latent;  // u per document
  std::vector<double> signal_fraction;
  double oracle_r = 0.0;  // pearson(u, realized signal fraction)
};

// Pseudo-word for index i: two or more consonant-vowel syllables; distinct
// indices give distinct words.
std::string synth_word(std::size_t index);

// Deterministic in config.seed; document i draws from its own derived
// stream.
SynthResult generate(const SynthConfig& config);

}  // namespace textrait
