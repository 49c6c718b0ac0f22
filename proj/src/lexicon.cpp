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

#include "textrait/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

#include "textrait/error.hpp"
#include "textrait/text.hpp"

namespace textrait {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == '\t' || line[pos] == ' ')) ++pos;
    std::size_t end = pos;
    while (end < line.size() && line[end] != '\t' && line[end] != ' ') ++end;
    if (end > pos) out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

int parse_id(std::string_view s, const std::string& where) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError(where + ": '" + std::string(s) + "' is not a category id");
  }
  return v;
}

std::string lower_pattern(std::string_view s) {
  std::string out;
  std::size_t pos = 0;
  while (pos < s.size()) utf8::append(out, utf8::to_lower(utf8::decode(s, pos)));
  return out;
}

}  // namespace

CategoryLexicon::CategoryLexicon(std::vector<LexiconCategory> categories, std::vector<LexiconPattern> patterns)
    : categories_(std::move(categories)), patterns_(std::move(patterns)) {
  std::unordered_map<int, std::size_t> position;
  for (std::size_t i = 0; i < categories_.size(); ++i) {
    if (!position.emplace(categories_[i].id, i).second) {
      throw DataError("duplicate category id " + std::to_string(categories_[i].id));
    }
  }
  for (const auto& p : patterns_) {
    if (p.pattern.empty()) throw DataError("empty lexicon pattern");
    const auto star = p.pattern.find('*');
    if (star != std::string::npos && star + 1 != p.pattern.size()) {
      throw DataError("pattern '" + p.pattern + "': '*' is only allowed as the final character");
    }
    if (p.category_ids.empty()) throw DataError("pattern '" + p.pattern + "' has no category");
    const bool is_prefix = star != std::string::npos;
    const std::string key = is_prefix ? p.pattern.substr(0, star) : p.pattern;
    auto& slot = is_prefix ? prefix_[key] : literal_[key];
    for (int id : p.category_ids) {
      auto it = position.find(id);
      if (it == position.end()) {
        throw DataError("pattern '" + p.pattern + "' references undeclared category " + std::to_string(id));
      }
      slot.push_back(it->second);
    }
    std::sort(slot.begin(), slot.end());
    slot.erase(std::unique(slot.begin(), slot.end()), slot.end());
    if (is_prefix) max_prefix_ = std::max(max_prefix_, key.size());
  }
}

std::vector<std::size_t> CategoryLexicon::match(std::string_view token) const {
  std::vector<std::size_t> hits;
  if (auto it = literal_.find(std::string(token)); it != literal_.end()) hits = it->second;
  if (!prefix_.empty()) {
    const std::size_t longest = std::min(max_prefix_, token.size());
    std::string key;
    for (std::size_t len = 0; len <= longest; ++len) {
      key.assign(token.substr(0, len));
      if (auto it = prefix_.find(key); it != prefix_.end()) {
        hits.insert(hits.end(), it->second.begin(), it->second.end());
      }
    }
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  }
  return hits;
}

CategoryLexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open lexicon " + path.string());
  enum class Section { preamble, categories, patterns } section = Section::preamble;
  std::vector<LexiconCategory> categories;
  std::vector<LexiconPattern> patterns;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string where = path.string() + ":" + std::to_string(line_no);
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() == 1 && fields[0] == "%") {
      if (section == Section::patterns) throw DataError(where + ": unexpected third '%' marker");
      section = section == Section::preamble ? Section::categories : Section::patterns;
      continue;
    }
    switch (section) {
      case Section::preamble:
        throw DataError(where + ": expected '%' to open the category section");
      case Section::categories: {
        if (fields.size() < 2) throw DataError(where + ": expected id<TAB>name");
        std::string name(fields[1]);
        for (std::size_t i = 2; i < fields.size(); ++i) name += " " + std::string(fields[i]);
        categories.push_back({parse_id(fields[0], where), std::move(name)});
        break;
      }
      case Section::patterns: {
        if (fields.size() < 2) throw DataError(where + ": expected pattern<TAB>id[<TAB>id...]");
        LexiconPattern p{lower_pattern(fields[0]), {}};
        for (std::size_t i = 1; i < fields.size(); ++i) {
          const int id = parse_id(fields[i], where);
          const bool declared = std::any_of(categories.begin(), categories.end(),
                                            [id](const LexiconCategory& c) { return c.id == id; });
          if (!declared) throw DataError(where + ": undeclared category " + std::to_string(id));
          p.category_ids.push_back(id);
        }
        patterns.push_back(std::move(p));
        break;
      }
    }
  }
  if (section != Section::patterns) throw DataError(path.string() + ": malformed section markers (need two '%' lines)");
  try {
    return CategoryLexicon(std::move(categories), std::move(patterns));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void save_lexicon(const CategoryLexicon& lexicon, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write lexicon " + path.string());
  out << "%\n";
  for (const auto& c : lexicon.categories()) out << c.id << '\t' << c.name << '\n';
  out << "%\n";
  for (const auto& p : lexicon.patterns()) {
    out << p.pattern;
    for (int id : p.category_ids) out << '\t' << id;
    out << '\n';
  }
}

std::vector<double> category_frequencies(const CategoryLexicon& lexicon, std::span<const std::string> tokens) {
  std::vector<double> out(lexicon.categories().size(), 0.0);
  if (tokens.empty()) return out;
  std::vector<std::size_t> counts(out.size(), 0);
  for (const auto& t : tokens) {
    for (std::size_t c : lexicon.match(t)) ++counts[c];
  }
  const double n = static_cast<double>(tokens.size());
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = static_cast<double>(counts[c]) / n;
  return out;
}

}  // namespace textrait
