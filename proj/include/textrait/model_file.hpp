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

// Trained pipeline on disk: `<name>.json` holds metadata, hyperparameters,
// vocabularies and array shapes; `<name>.bin` holds every numeric array as
// little-endian IEEE-754 doubles, row-major, concatenated in the order the
// JSON lists them. Embedding tables are referenced by path (relative to the
// model file) and content digest instead of being copied.

#include <cstdint>
#include <filesystem>
#include <string>

#include "textrait/analyze.hpp"
#include "textrait/corpus.hpp"

namespace textrait {

inline constexpr int kModelFormatVersion = 1;

struct ModelFile {
  TrainedPipeline pipeline;
  SplitSpec split;
  std::size_t min_length = 0;
  std::uint64_t seed = 0;
  std::string fingerprint;
  // Embed featurizer only: table location relative to the model file's
  // directory, and hex_digest of the table file bytes.
  std::string embeddings_path;
  std::string embeddings_digest;
};

// Digest used for embedding references.
std::string file_digest(const std::filesystem::path& path);

// Writes `path` (JSON) and its `.bin` sidecar next to it.
void save_model(const ModelFile& model, const std::filesystem::path& path);

// Throws DataError for a format version other than kModelFormatVersion, a
// missing or short sidecar, a changed embedding table, or malformed state.
ModelFile load_model(const std::filesystem::path& path);

}  // namespace textrait
