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

#include "textrait/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "textrait/error.hpp"
#include "textrait/metrics.hpp"
#include "textrait/random.hpp"

namespace textrait {
namespace {

constexpr std::array<std::string_view, 20> kSyllables = {"ba", "ke", "lo", "mu", "ni", "po", "ra", "se", "ti", "vu",
                                                         "do", "fa", "gi", "ho", "ju", "ka", "le", "mo", "nu", "pi"};

void check_groups(const std::vector<SynthGroup>& groups, const char* what) {
  if (groups.empty()) throw UsageError(std::string(what) + " groups must not be empty");
  double sum = 0.0;
  for (const auto& g : groups) {
    if (!(g.proportion >= 0.0)) throw UsageError(std::string(what) + " proportions must be non-negative");
    sum += g.proportion;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw UsageError(std::string(what) + " proportions sum to " + std::to_string(sum) + ", expected 1");
  }
}

std::size_t pick_group(const std::vector<SynthGroup>& groups, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    acc += groups[i].proportion;
    if (u < acc) return i;
  }
  return groups.size() - 1;
}

}  // namespace

void SynthConfig::validate() const {
  if (n_docs == 0) throw UsageError("n_docs must be positive");
  if (signal_words == 0 || noise_words == 0) throw UsageError("signal and noise vocabularies must be nonempty");
  if (!(signal_strength >= 0.0 && signal_strength <= 1.0)) throw UsageError("signal_strength must lie in [0, 1]");
  if (!(base_signal_rate > 0.0) || base_signal_rate * (1.0 + signal_strength) > 1.0) {
    throw UsageError("base_signal_rate must be positive with base_signal_rate * (1 + signal_strength) <= 1");
  }
  if (!(length_mean > 0.0) || !(length_sd >= 0.0)) throw UsageError("length_mean must be positive, length_sd >= 0");
  if (items == 0) throw UsageError("items must be positive");
  if (!(item_noise >= 0.0)) throw UsageError("item_noise must be non-negative");
  if (embedding_dimension < 2) throw UsageError("embedding_dimension must be at least 2");
  check_groups(genders, "gender");
  check_groups(job_families, "job family");
  for (const auto& g : genders) parse_gender(g.label == "unspecified" ? "" : g.label);
}

std::string synth_word(std::size_t index) {
  std::size_t v = index + kSyllables.size();  // at least two syllables
  std::string out;
  while (v > 0) {
    out.insert(0, kSyllables[v % kSyllables.size()]);
    v /= kSyllables.size();
  }
  return out;
}

SynthResult generate(const SynthConfig& config) {
  config.validate();
  SynthResult result;
  const std::size_t s = config.signal_words;
  const std::size_t m = config.noise_words;
  std::vector<std::string> vocab(s + m);
  for (std::size_t i = 0; i < vocab.size(); ++i) vocab[i] = synth_word(i);

  result.corpus.source = "synth:seed=" + std::to_string(config.seed);
  result.corpus.records.reserve(config.n_docs);
  for (std::size_t d = 0; d < config.n_docs; ++d) {
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(d)));
    const auto& gender = config.genders[pick_group(config.genders, uniform01(rng))];
    const auto& family = config.job_families[pick_group(config.job_families, uniform01(rng))];
    const double u = std::clamp(1.0 + 4.0 * uniform01(rng) + gender.shift + family.shift, 1.0, 5.0);
    const double p = config.base_signal_rate * (1.0 + config.signal_strength * (u - 3.0) / 2.0);

    const double mean_len = config.length_mean + config.length_slope * (u - 3.0);
    const double raw_len = std::round(mean_len + config.length_sd * standard_normal(rng));
    const auto length = static_cast<std::size_t>(std::max(static_cast<double>(config.min_doc_length), raw_len));

    std::string text;
    std::size_t signal = 0;
    std::size_t until_period = 8 + uniform_index(rng, 9);
    for (std::size_t t = 0; t < length; ++t) {
      std::size_t w;
      if (uniform01(rng) < p) {
        w = uniform_index(rng, s);
        ++signal;
      } else {
        w = s + uniform_index(rng, m);
      }
      if (!text.empty()) text += ' ';
      text += vocab[w];
      if (--until_period == 0 || t + 1 == length) {
        text += '.';
        until_period = 8 + uniform_index(rng, 9);
      }
    }

    ResponseRecord rec;
    rec.id = "s" + std::to_string(d);
    rec.text = std::move(text);
    for (std::size_t i = 0; i < config.items; ++i) {
      const double v = std::round(u + config.item_noise * standard_normal(rng));
      rec.items.push_back(static_cast<int>(std::clamp(v, 1.0, 5.0)));
    }
    rec.gender = parse_gender(gender.label == "unspecified" ? "" : gender.label);
    rec.job_family = family.label;
    result.corpus.records.push_back(std::move(rec));
    result.latent.push_back(u);
    result.signal_fraction.push_back(static_cast<double>(signal) / static_cast<double>(length));
  }

  // Embeddings: an isotropic random part of norm ~1 for every word, plus a
  // shared direction for signal words.
  const std::size_t dim = config.embedding_dimension;
  Rng erng(derive_seed(config.seed, "synth.embeddings"));
  std::vector<double> direction(dim);
  double norm = 0.0;
  for (auto& x : direction) {
    x = standard_normal(erng);
    norm += x * x;
  }
  norm = std::sqrt(norm);
  for (auto& x : direction) x *= config.embedding_signal / norm;
  result.embeddings = EmbeddingTable(dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<double> v(dim);
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    for (std::size_t k = 0; k < dim; ++k) v[k] = scale * standard_normal(erng) + (i < s ? direction[k] : 0.0);
    result.embeddings.add(vocab[i], v);
  }
  result.embeddings.set_source("synth");

  // Lexicon: signal words listed literally; two noise categories, one of
  // them defined by prefix patterns.
  std::vector<LexiconPattern> patterns;
  for (std::size_t i = 0; i < s; ++i) patterns.push_back({vocab[i], {1}});
  for (std::size_t i = s; i < s + m; i += 2) patterns.push_back({vocab[i], {2}});
  patterns.push_back({std::string(kSyllables[3]) + "*", {3}});
  patterns.push_back({std::string(kSyllables[7]) + "*", {3}});
  result.lexicon = CategoryLexicon({{1, "signal"}, {2, "noise_even"}, {3, "noise_prefix"}}, std::move(patterns));

  try {
    result.oracle_r = pearson(result.latent, result.signal_fraction).r;
  } catch (const DataError&) {
    result.oracle_r = 0.0;
  }
  return result;
}

}  // namespace textrait
