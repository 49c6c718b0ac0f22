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

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace textrait {

// Pretrained word vectors, e.g. a GloVe text dump.
//
// Text format: one `word c1 c2 ... cd` entry per line, single-space
// separated. A leading `N d` header line (two integers) is detected and
// skipped.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(std::size_t dimension) : dimension_(dimension) {}

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }
  const std::string& source() const { return source_; }
  void set_source(std::string source) { source_ = std::move(source); }

  // Throws DataError on a duplicate word or wrong dimension.
  void add(std::string word, std::span<const double> vector);

  // nullptr when the word is absent.
  const double* find(std::string_view word) const;
  std::span<const double> vector(std::size_t i) const {
    return {data_.data() + i * dimension_, dimension_};
  }

 private:
  std::size_t dimension_ = 0;
  std::vector<std::string> words_;  // insertion order
  std::vector<double> data_;        // row-major
  std::unordered_map<std::string, std::size_t> index_;
  std::string source_;
};

// Dimension is taken from the first entry. Throws DataError naming the line
// for inconsistent dimensions, duplicate words and non-numeric components.
EmbeddingTable load_embeddings(const std::filesystem::path& path);

// Writes entries in insertion order with shortest round-trip decimals.
void save_embeddings(const EmbeddingTable& table, const std::filesystem::path& path);

struct DocVector {
  std::vector<double> values;  // length d
  double coverage = 0.0;       // in-table token occurrences / all tokens
  bool empty = false;          // no token found in the table: values are zero
};

// Mean of the vectors of in-table tokens, each occurrence counted.
// Out-of-table tokens are skipped.
DocVector doc_vector(const EmbeddingTable& table, std::span<const std::string> tokens);

}  // namespace textrait
