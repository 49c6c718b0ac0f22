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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace textrait {

struct Corpus;

// Lowercase word tokens of one document, in document order. Never contains
// empty strings.
using TokenStream = std::vector<std::string>;

// Tokenizer rules:
//   * text is decoded as UTF-8; invalid bytes act as separators;
//   * a token is a maximal run of letters and digits, lowercased;
//   * an apostrophe (U+0027 or U+2019) between two letters/digits is kept
//     as U+0027 ("don't" is one token);
//   * everything else separates tokens and is dropped.
// Letter classification outside ASCII is approximate: Latin-1 letters and
// non-punctuation codepoints above U+00FF count as letters.
TokenStream tokenize(std::string_view text);

// tokenize(text).size(), without materializing the tokens.
std::size_t word_count(std::string_view text);

// Number of letter codepoints in text, by the tokenizer's definition.
std::size_t letter_count(std::string_view text);

// Sentence segmentation: a sentence ends at a maximal run of '.', '!' or '?'
// followed by whitespace or end of text. Segments without any letter are
// dropped. Returned segments are trimmed.
std::vector<std::string> sentences(std::string_view text);

// Subset of n-gram orders {1, 2, 3}.
class OrderSet {
 public:
  OrderSet() = default;
  // Throws UsageError for orders outside 1..3.
  OrderSet(std::initializer_list<int> orders);
  static OrderSet from_list(std::span<const int> orders);

  bool contains(int order) const { return order >= 1 && order <= 3 && (mask_ >> order) & 1U; }
  bool empty() const { return mask_ == 0; }
  std::vector<int> list() const;

  friend bool operator==(const OrderSet&, const OrderSet&) = default;

 private:
  std::uint8_t mask_ = 0;
};

// Contiguous n-grams joined by a single space. Output is grouped by order
// (ascending) and within each order follows document order.
std::vector<std::string> ngrams(std::span<const std::string> tokens, const OrderSet& orders);

struct VocabEntry {
  std::string ngram;
  int order = 1;
  std::size_t document_frequency = 0;
  std::size_t total_count = 0;
};

enum class VocabSelection { term_frequency, document_frequency };

struct VocabularyOptions {
  std::size_t top_k = 2000;
  OrderSet orders{1, 2, 3};
  VocabSelection selection = VocabSelection::term_frequency;
};

// Ranked n-gram vocabulary. Position i holds the i-th most frequent n-gram;
// frequency ties are broken by lexicographic (byte) order of the n-gram.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<VocabEntry> entries);

  std::size_t size() const { return entries_.size(); }
  const std::vector<VocabEntry>& entries() const { return entries_; }
  const VocabEntry& operator[](std::size_t i) const { return entries_[i]; }
  std::optional<std::size_t> find(std::string_view ngram) const;

 private:
  std::vector<VocabEntry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Throws UsageError when docs is empty or top_k == 0.
Vocabulary build_vocabulary(std::span<const TokenStream> docs, const VocabularyOptions& options);
Vocabulary build_vocabulary(const Corpus& corpus, const VocabularyOptions& options);

using StopwordSet = std::unordered_set<std::string>;

// One token per line, '#' starts a comment. Entries are run through the
// tokenizer's lowercasing.
StopwordSet load_stopwords(const std::filesystem::path& path);
TokenStream remove_stopwords(TokenStream tokens, const StopwordSet& stopwords);

namespace utf8 {

// Decodes one codepoint starting at text[pos] and advances pos. Invalid
// sequences yield U+FFFD and consume one byte.
char32_t decode(std::string_view text, std::size_t& pos);
void append(std::string& out, char32_t cp);
bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
char32_t to_lower(char32_t cp);

}  // namespace utf8

}  // namespace textrait
