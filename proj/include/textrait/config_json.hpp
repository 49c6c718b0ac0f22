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

// JSON forms of hyperparameter structs. Keys are sorted (nlohmann::json
// uses std::map), so dump() of equal values gives identical bytes, which the
// fingerprints and model files rely on.

#include <set>
#include <string>

#include "json.hpp"
#include "textrait/corpus.hpp"
#include "textrait/featurizer.hpp"
#include "textrait/forest.hpp"

namespace textrait {

using Json = nlohmann::json;

// Strict reader for one JSON object: every key must be consumed, and
// finish() throws UsageError naming the first key nobody asked for.
class JsonFields {
 public:
  // `path` is the dotted location used in messages ("" for the root).
  JsonFields(const Json& object, std::string path);

  bool has(const std::string& key) const;
  // nullptr when absent; marks the key as known either way.
  const Json* find(const std::string& key);
  const Json& require(const std::string& key);
  std::string child_path(const std::string& key) const;

  template <typename T>
  T get(const std::string& key, const T& fallback) {
    const Json* v = find(key);
    if (!v || v->is_null()) return fallback;
    try {
      return v->get<T>();
    } catch (const nlohmann::json::exception&) {
      throw_type_error(key);
    }
  }

  void finish() const;

 private:
  [[noreturn]] void throw_type_error(const std::string& key) const;

  const Json& object_;
  std::string path_;
  std::set<std::string> seen_;
};

Json to_json(const TfidfOptions& options);
Json to_json(const LdaOptions& options);
Json to_json(const Doc2VecConfig& config);
Json to_json(const ForestConfig& config);
Json to_json(const SplitSpec& spec);
// Kind plus the parameter block for that kind only.
Json to_json(const FeaturizerSpec& spec);

// Readers start from the given defaults and override the keys present.
// Unknown keys throw UsageError.
TfidfOptions tfidf_options_from_json(const Json& j, const std::string& path, TfidfOptions defaults = {});
LdaOptions lda_options_from_json(const Json& j, const std::string& path, LdaOptions defaults = {});
Doc2VecConfig doc2vec_config_from_json(const Json& j, const std::string& path, Doc2VecConfig defaults = {});
ForestConfig forest_config_from_json(const Json& j, const std::string& path, ForestConfig defaults = {});
SplitSpec split_spec_from_json(const Json& j, const std::string& path, SplitSpec defaults = {});
FeaturizerSpec featurizer_spec_from_json(const Json& j, const std::string& path);

// 16 lowercase hex digits of fnv1a64(bytes).
std::string hex_digest(std::string_view bytes);

}  // namespace textrait
