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

#include "textrait/text.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "textrait/corpus.hpp"
#include "textrait/error.hpp"

namespace textrait {

namespace utf8 {

char32_t decode(std::string_view text, std::size_t& pos) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  const unsigned char lead = byte(pos);
  if (lead < 0x80) {
    ++pos;
    return lead;
  }
  std::size_t len;
  char32_t cp;
  if ((lead & 0xE0) == 0xC0) {
    len = 2;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4;
    cp = lead & 0x07;
  } else {
    ++pos;
    return 0xFFFD;
  }
  if (pos + len > text.size()) {
    ++pos;
    return 0xFFFD;
  }
  for (std::size_t i = 1; i < len; ++i) {
    const unsigned char c = byte(pos + i);
    if ((c & 0xC0) != 0x80) {
      ++pos;
      return 0xFFFD;
    }
    cp = (cp << 6) | (c & 0x3F);
  }
  // Overlong forms and surrogates.
  static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    return 0xFFFD;
  }
  pos += len;
  return cp;
}

void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

bool is_letter(char32_t cp) {
  if (cp < 0x80) return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z');
  if (cp < 0x100) return cp >= 0xC0 && cp != 0xD7 && cp != 0xF7;
  if (cp == 0xFFFD) return false;
  // Punctuation, symbol, and emoji blocks.
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  if (cp >= 0xFE30 && cp <= 0xFE6F) return false;
  if (cp >= 0xFF00 && cp <= 0xFF20) return false;
  if (cp >= 0x1F000 && cp <= 0x1FAFF) return false;
  if (cp >= 0xE000 && cp <= 0xF8FF) return false;  // private use
  return true;
}

char32_t to_lower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  if (cp >= 0x100 && cp <= 0x17F && cp != 0x130 && cp != 0x138 && cp != 0x149 &&
      cp != 0x17F) {
    // Latin Extended-A pairs: even upper/odd lower below U+0138, odd/even above.
    if (cp < 0x138) return cp | 1U;
    if (cp > 0x138 && cp < 0x149) return (cp & 1U) ? cp + 1 : cp;
    if (cp > 0x149 && cp < 0x178) return cp | 1U;
    if (cp == 0x178) return 0xFF;
    if (cp > 0x178) return (cp & 1U) ? cp + 1 : cp;
  }
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 32;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 32;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 80;
  return cp;
}

}  // namespace utf8

namespace {

bool is_apostrophe(char32_t cp) { return cp == U'\'' || cp == 0x2019; }
bool is_word_char(char32_t cp) { return utf8::is_letter(cp) || utf8::is_digit(cp); }

// Calls emit(token) for every token of text.
template <typename Emit>
void scan_tokens(std::string_view text, Emit&& emit) {
  std::string token;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = utf8::decode(text, pos);
    if (is_word_char(cp)) {
      utf8::append(token, utf8::to_lower(cp));
      continue;
    }
    if (is_apostrophe(cp) && !token.empty() && pos < text.size()) {
      std::size_t peek = pos;
      if (is_word_char(utf8::decode(text, peek))) {
        token.push_back('\'');
        continue;
      }
    }
    if (!token.empty()) {
      emit(token);
      token.clear();
    }
  }
  if (!token.empty()) emit(token);
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }
bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool has_letter(std::string_view s) {
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (utf8::is_letter(utf8::decode(s, pos))) return true;
  }
  return false;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

TokenStream tokenize(std::string_view text) {
  TokenStream out;
  scan_tokens(text, [&](const std::string& t) { out.push_back(t); });
  return out;
}

std::size_t word_count(std::string_view text) {
  std::size_t n = 0;
  scan_tokens(text, [&](const std::string&) { ++n; });
  return n;
}

std::size_t letter_count(std::string_view text) {
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (utf8::is_letter(utf8::decode(text, pos))) ++n;
  }
  return n;
}

std::vector<std::string> sentences(std::string_view text) {
  std::vector<std::string> out;
  auto flush = [&](std::string_view segment) {
    segment = trim(segment);
    if (has_letter(segment)) out.emplace_back(segment);
  };
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_terminator(text[i])) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < text.size() && is_terminator(text[end])) ++end;
    if (end == text.size() || is_space(text[end])) {
      flush(text.substr(start, end - start));
      start = end;
    }
    i = end;
  }
  if (start < text.size()) flush(text.substr(start));
  return out;
}

OrderSet::OrderSet(std::initializer_list<int> orders) {
  for (int n : orders) {
    if (n < 1 || n > 3) throw UsageError("n-gram order must be 1, 2 or 3, got " + std::to_string(n));
    mask_ |= static_cast<std::uint8_t>(1U << n);
  }
}

OrderSet OrderSet::from_list(std::span<const int> orders) {
  OrderSet set;
  for (int n : orders) {
    if (n < 1 || n > 3) throw UsageError("n-gram order must be 1, 2 or 3, got " + std::to_string(n));
    set.mask_ |= static_cast<std::uint8_t>(1U << n);
  }
  return set;
}

std::vector<int> OrderSet::list() const {
  std::vector<int> out;
  for (int n = 1; n <= 3; ++n) {
    if (contains(n)) out.push_back(n);
  }
  return out;
}

std::vector<std::string> ngrams(std::span<const std::string> tokens, const OrderSet& orders) {
  std::vector<std::string> out;
  for (int n : orders.list()) {
    const std::size_t un = static_cast<std::size_t>(n);
    if (tokens.size() < un) continue;
    for (std::size_t i = 0; i + un <= tokens.size(); ++i) {
      std::string g = tokens[i];
      for (std::size_t j = 1; j < un; ++j) {
        g.push_back(' ');
        g += tokens[i + j];
      }
      out.push_back(std::move(g));
    }
  }
  return out;
}

Vocabulary::Vocabulary(std::vector<VocabEntry> entries) : entries_(std::move(entries)) {
  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!index_.emplace(entries_[i].ngram, i).second) {
      throw DataError("duplicate vocabulary entry '" + entries_[i].ngram + "'");
    }
  }
}

std::optional<std::size_t> Vocabulary::find(std::string_view ngram) const {
  auto it = index_.find(std::string(ngram));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocabulary(std::span<const TokenStream> docs, const VocabularyOptions& options) {
  if (docs.empty()) throw UsageError("cannot build a vocabulary from an empty corpus");
  if (options.top_k == 0) throw UsageError("vocabulary top_k must be >= 1");
  if (options.orders.empty()) throw UsageError("vocabulary needs at least one n-gram order");

  struct Stats {
    int order;
    std::size_t total = 0;
    std::size_t df = 0;
    std::size_t last_doc = SIZE_MAX;
  };
  std::unordered_map<std::string, Stats> stats;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (int n : options.orders.list()) {
      for (auto& g : ngrams(docs[d], OrderSet{n})) {
        auto [it, inserted] = stats.try_emplace(std::move(g), Stats{n});
        Stats& s = it->second;
        ++s.total;
        if (s.last_doc != d) {
          ++s.df;
          s.last_doc = d;
        }
      }
    }
  }

  std::vector<VocabEntry> all;
  all.reserve(stats.size());
  for (auto& [g, s] : stats) all.push_back({g, s.order, s.df, s.total});
  const bool by_df = options.selection == VocabSelection::document_frequency;
  auto key = [by_df](const VocabEntry& e) { return by_df ? e.document_frequency : e.total_count; };
  auto better = [&](const VocabEntry& a, const VocabEntry& b) {
    if (key(a) != key(b)) return key(a) > key(b);
    return a.ngram < b.ngram;
  };
  const std::size_t keep = std::min(options.top_k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(), better);
  all.resize(keep);
  return Vocabulary(std::move(all));
}

Vocabulary build_vocabulary(const Corpus& corpus, const VocabularyOptions& options) {
  std::vector<TokenStream> docs;
  docs.reserve(corpus.records.size());
  for (const auto& r : corpus.records) docs.push_back(tokenize(r.text));
  return build_vocabulary(docs, options);
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open stopword file " + path.string());
  StopwordSet out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (auto& t : tokenize(line)) out.insert(std::move(t));
  }
  return out;
}

TokenStream remove_stopwords(TokenStream tokens, const StopwordSet& stopwords) {
  if (stopwords.empty()) return tokens;
  std::erase_if(tokens, [&](const std::string& t) { return stopwords.contains(t); });
  return tokens;
}

}  // namespace textrait
