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
#include <string>
#include <vector>

#include "textrait/config_json.hpp"
#include "textrait/synth.hpp"

namespace textrait::cli {

// Everything a command may need. Every field has a default, and
// to_json() echoes all of them, so the emitted effective config reproduces
// the run on its own.
struct RunConfig {
  std::uint64_t seed = 0;
  std::string output_dir = "out";

  std::string dataset_path;
  std::string dataset_format;  // "csv", "jsonl" or "" (from the extension)
  std::size_t min_length = 0;
  double train_fraction = 0.8;

  FeaturizerSpec featurizer;
  std::string embeddings_path;
  std::string lexicon_path;
  std::string stopwords_path;

  ForestConfig forest;

  std::vector<std::string> grid_featurizers{"tfidf", "lda", "embed", "doc2vec", "lexicon"};
  std::vector<std::size_t> grid_min_lengths{50, 100, 150, 200};

  std::string easy_words_path;
  std::string pos_lexicon_path;

  std::size_t topics_top_n = 10;

  SynthConfig synth;
  std::string synth_format = "csv";

  std::string model_path;
};

// Reads a config document over the defaults. Unknown keys and nested
// "seed" keys (all seeds derive from the top-level one) throw UsageError.
RunConfig parse_run_config(const Json& j);
RunConfig load_run_config(const std::string& path);
Json to_json(const RunConfig& config);

}  // namespace textrait::cli
