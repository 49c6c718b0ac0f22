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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace textrait {

enum class Gender { female, male, unspecified };

std::string_view to_string(Gender g);
// Accepts "female", "male" and "" (unspecified). Throws DataError otherwise.
Gender parse_gender(std::string_view s);

// One candidate: free-text answers plus the self-rated Likert items that
// define the regression target.
struct ResponseRecord {
  std::string id;
  std::string text;
  std::vector<int> items;       // answered items only, each in 1..5
  std::optional<double> score;  // precomputed target, overrides items
  Gender gender = Gender::unspecified;
  std::string job_family;
  std::map<std::string, double> extra;  // keyed by full column name, e.g. "x_openness"
};

struct Corpus {
  std::vector<ResponseRecord> records;
  std::string source;
  std::vector<std::string> history;  // one line per filter applied

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
};

enum class DatasetFormat { csv, jsonl };

DatasetFormat parse_format(std::string_view s);
// Format implied by the file extension (.jsonl / .json -> jsonl, else csv).
DatasetFormat format_from_path(const std::filesystem::path& path);

// Reads a labeled dataset. Throws DataError naming the row (and column) for
// malformed rows, out-of-range items, duplicate ids and missing columns.
Corpus load_dataset(const std::filesystem::path& path, DatasetFormat format);

void save_dataset(const Corpus& corpus, const std::filesystem::path& path, DatasetFormat format);

// Canonical JSONL rendering of the records. Equal corpora serialize to
// identical bytes.
std::string serialize(const Corpus& corpus);

// Mean of the answered items, or the precomputed score when present.
// Throws DataError when the record has neither.
double target_score(const ResponseRecord& record);

// Keeps records whose tokenizer word count is >= min_words.
Corpus filter_min_length(const Corpus& corpus, std::size_t min_words);

struct SplitSpec {
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
};

struct Split {
  Corpus train;
  Corpus test;
};

// Seeded Fisher-Yates shuffle of record indices, then the first
// round(train_fraction * N) shuffled indices form the training side. Both
// sides keep the input's relative record order.
Split split(const Corpus& corpus, const SplitSpec& spec);

}  // namespace textrait
