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
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace textrait {

struct LexiconCategory {
  int id = 0;
  std::string name;
};

struct LexiconPattern {
  std::string pattern;  // may end in '*' (prefix match)
  std::vector<int> category_ids;
};

// Closed-vocabulary word-category dictionary in the LIWC file layout:
//
//   %
//   1<TAB>posemo
//   2<TAB>negemo
//   %
//   happ*<TAB>1
//   sad<TAB>2
//
// A token may belong to several categories. Literal patterns are tested
// first, then every prefix pattern; all hits are unioned.
class CategoryLexicon {
 public:
  CategoryLexicon() = default;
  // Throws DataError for duplicate category ids, unknown ids in patterns,
  // empty id lists, or '*' anywhere but the final character.
  CategoryLexicon(std::vector<LexiconCategory> categories, std::vector<LexiconPattern> patterns);

  const std::vector<LexiconCategory>& categories() const { return categories_; }
  const std::vector<LexiconPattern>& patterns() const { return patterns_; }

  // Category positions (indices into categories()) matched by token, sorted
  // and unique.
  std::vector<std::size_t> match(std::string_view token) const;

 private:
  std::vector<LexiconCategory> categories_;
  std::vector<LexiconPattern> patterns_;
  std::unordered_map<std::string, std::vector<std::size_t>> literal_;
  std::unordered_map<std::string, std::vector<std::size_t>> prefix_;
  std::size_t max_prefix_ = 0;
};

CategoryLexicon load_lexicon(const std::filesystem::path& path);
void save_lexicon(const CategoryLexicon& lexicon, const std::filesystem::path& path);

// cf(c, r) = (number of tokens of r matching category c) / |r|, in category
// declaration order. An empty document maps to the zero vector.
std::vector<double> category_frequencies(const CategoryLexicon& lexicon, std::span<const std::string> tokens);

}  // namespace textrait
