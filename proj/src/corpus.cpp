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

#include "textrait/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "textrait/csv.hpp"
#include "textrait/error.hpp"
#include "textrait/random.hpp"
#include "textrait/text.hpp"

namespace textrait {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::string where(std::size_t row, std::string_view column = {}) {
  std::string s = "row " + std::to_string(row);
  if (!column.empty()) s += ", column " + std::string(column);
  return s;
}

int parse_item(std::string_view s, std::size_t row, std::string_view column) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError(where(row, column) + ": item value '" + std::string(s) + "' is not an integer");
  }
  if (v < 1 || v > 5) {
    throw DataError(where(row, column) + ": item value " + std::to_string(v) + " outside 1..5");
  }
  return v;
}

double parse_number(std::string_view s, std::size_t row, std::string_view column) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw DataError(where(row, column) + ": '" + std::string(s) + "' is not a finite number");
  }
  return v;
}

// item_<k> with k >= 1, or 0 when the name is not an item column.
int item_index(std::string_view name) {
  if (!name.starts_with("item_")) return 0;
  name.remove_prefix(5);
  int k = 0;
  auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), k);
  if (ec != std::errc() || ptr != name.data() + name.size() || k < 1) return 0;
  return k;
}

void check_record(const ResponseRecord& r, std::size_t row, std::unordered_set<std::string>& ids) {
  if (r.items.empty() && !r.score) {
    throw DataError(where(row) + ": no answered items and no score");
  }
  if (!ids.insert(r.id).second) throw DataError(where(row) + ": duplicate id '" + r.id + "'");
}

Corpus load_csv(std::istream& in, const std::string& source) {
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header) throw DataError(source + ": empty file, expected a header row");

  std::optional<std::size_t> text_col, id_col, gender_col, family_col, score_col;
  std::vector<std::pair<int, std::size_t>> item_cols;
  std::vector<std::size_t> extra_cols;
  for (std::size_t c = 0; c < header->size(); ++c) {
    const std::string& name = (*header)[c];
    if (name == "text") text_col = c;
    else if (name == "id") id_col = c;
    else if (name == "gender") gender_col = c;
    else if (name == "job_family") family_col = c;
    else if (name == "score") score_col = c;
    else if (int k = item_index(name)) item_cols.emplace_back(k, c);
    else if (name.starts_with("x_") && name.size() > 2) extra_cols.push_back(c);
  }
  if (!text_col) throw DataError(source + ": missing required column 'text'");
  if (item_cols.empty() && !score_col) {
    throw DataError(source + ": missing target columns: need item_1..item_k or score");
  }
  std::sort(item_cols.begin(), item_cols.end());

  Corpus corpus;
  corpus.source = source;
  std::unordered_set<std::string> ids;
  std::size_t row = 0;
  while (auto fields = reader.next()) {
    if (fields->size() == 1 && (*fields)[0].empty()) continue;  // blank line
    ++row;
    if (fields->size() != header->size()) {
      throw DataError(where(row) + " (line " + std::to_string(reader.record_line()) + "): expected " +
                      std::to_string(header->size()) + " fields, found " +
                      std::to_string(fields->size()));
    }
    const auto& f = *fields;
    ResponseRecord r;
    r.text = f[*text_col];
    r.id = id_col && !trim(f[*id_col]).empty() ? std::string(trim(f[*id_col]))
                                               : "row_" + std::to_string(row);
    if (gender_col) {
      try {
        r.gender = parse_gender(trim(f[*gender_col]));
      } catch (const DataError& e) {
        throw DataError(where(row, "gender") + ": " + e.what());
      }
    }
    if (family_col) r.job_family = std::string(trim(f[*family_col]));
    for (auto [k, c] : item_cols) {
      const auto v = trim(f[c]);
      if (!v.empty()) r.items.push_back(parse_item(v, row, (*header)[c]));
    }
    if (score_col) {
      const auto v = trim(f[*score_col]);
      if (!v.empty()) r.score = parse_number(v, row, "score");
    }
    for (std::size_t c : extra_cols) {
      const auto v = trim(f[c]);
      if (!v.empty()) r.extra[(*header)[c]] = parse_number(v, row, (*header)[c]);
    }
    check_record(r, row, ids);
    corpus.records.push_back(std::move(r));
  }
  return corpus;
}

Corpus load_jsonl(std::istream& in, const std::string& source) {
  Corpus corpus;
  corpus.source = source;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++row;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError(where(row) + ": invalid JSON: " + e.what());
    }
    if (!obj.is_object()) throw DataError(where(row) + ": expected a JSON object");
    ResponseRecord r;
    auto text = obj.find("text");
    if (text == obj.end() || !text->is_string()) {
      throw DataError(where(row, "text") + ": missing required string field");
    }
    r.text = text->get<std::string>();
    if (auto id = obj.find("id"); id != obj.end() && !id->is_null()) {
      r.id = id->is_string() ? id->get<std::string>() : id->dump();
    } else {
      r.id = "row_" + std::to_string(row);
    }
    if (auto g = obj.find("gender"); g != obj.end() && !g->is_null()) {
      if (!g->is_string()) throw DataError(where(row, "gender") + ": expected a string");
      try {
        r.gender = parse_gender(g->get<std::string>());
      } catch (const DataError& e) {
        throw DataError(where(row, "gender") + ": " + e.what());
      }
    }
    if (auto jf = obj.find("job_family"); jf != obj.end() && !jf->is_null()) {
      if (!jf->is_string()) throw DataError(where(row, "job_family") + ": expected a string");
      r.job_family = jf->get<std::string>();
    }
    if (auto items = obj.find("items"); items != obj.end() && !items->is_null()) {
      if (!items->is_array()) throw DataError(where(row, "items") + ": expected an array");
      for (std::size_t k = 0; k < items->size(); ++k) {
        const json& v = (*items)[k];
        const std::string col = "items[" + std::to_string(k) + "]";
        if (v.is_null()) continue;
        if (!v.is_number_integer()) throw DataError(where(row, col) + ": item is not an integer");
        const auto iv = v.get<long long>();
        if (iv < 1 || iv > 5) {
          throw DataError(where(row, col) + ": item value " + std::to_string(iv) + " outside 1..5");
        }
        r.items.push_back(static_cast<int>(iv));
      }
    }
    if (auto s = obj.find("score"); s != obj.end() && !s->is_null()) {
      if (!s->is_number() || !std::isfinite(s->get<double>())) {
        throw DataError(where(row, "score") + ": expected a finite number");
      }
      r.score = s->get<double>();
    }
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (!it.key().starts_with("x_") || it.value().is_null()) continue;
      if (!it.value().is_number()) throw DataError(where(row, it.key()) + ": expected a number");
      r.extra[it.key()] = it.value().get<double>();
    }
    check_record(r, row, ids);
    corpus.records.push_back(std::move(r));
  }
  return corpus;
}

json record_json(const ResponseRecord& r) {
  json obj = json::object();
  obj["id"] = r.id;
  obj["text"] = r.text;
  obj["gender"] = r.gender == Gender::unspecified ? json(nullptr) : json(to_string(r.gender));
  obj["job_family"] = r.job_family;
  obj["items"] = r.items;
  obj["score"] = r.score ? json(*r.score) : json(nullptr);
  for (const auto& [k, v] : r.extra) obj[k] = v;
  return obj;
}

}  // namespace

std::string_view to_string(Gender g) {
  switch (g) {
    case Gender::female:
      return "female";
    case Gender::male:
      return "male";
    case Gender::unspecified:
      break;
  }
  return "unspecified";
}

Gender parse_gender(std::string_view s) {
  if (s == "female") return Gender::female;
  if (s == "male") return Gender::male;
  if (s.empty() || s == "unspecified") return Gender::unspecified;
  throw DataError("unknown gender value '" + std::string(s) + "' (expected female, male or empty)");
}

DatasetFormat parse_format(std::string_view s) {
  if (s == "csv") return DatasetFormat::csv;
  if (s == "jsonl") return DatasetFormat::jsonl;
  throw UsageError("unknown dataset format '" + std::string(s) + "' (expected csv or jsonl)");
}

DatasetFormat format_from_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return ext == ".jsonl" || ext == ".json" ? DatasetFormat::jsonl : DatasetFormat::csv;
}

Corpus load_dataset(const std::filesystem::path& path, DatasetFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open dataset " + path.string());
  return format == DatasetFormat::csv ? load_csv(in, path.string()) : load_jsonl(in, path.string());
}

void save_dataset(const Corpus& corpus, const std::filesystem::path& path, DatasetFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write dataset " + path.string());
  if (format == DatasetFormat::jsonl) {
    out << serialize(corpus);
    return;
  }
  std::size_t max_items = 0;
  bool any_score = false;
  std::set<std::string> extras;
  for (const auto& r : corpus.records) {
    max_items = std::max(max_items, r.items.size());
    any_score = any_score || r.score.has_value();
    for (const auto& [k, v] : r.extra) extras.insert(k);
  }
  std::vector<std::string> header{"id", "text", "gender", "job_family"};
  for (std::size_t k = 1; k <= max_items; ++k) header.push_back("item_" + std::to_string(k));
  if (any_score || max_items == 0) header.push_back("score");
  header.insert(header.end(), extras.begin(), extras.end());
  csv::write_row(out, header);

  for (const auto& r : corpus.records) {
    std::vector<std::string> row{r.id, r.text,
                                 r.gender == Gender::unspecified ? "" : std::string(to_string(r.gender)),
                                 r.job_family};
    for (std::size_t k = 0; k < max_items; ++k) {
      row.push_back(k < r.items.size() ? std::to_string(r.items[k]) : "");
    }
    if (any_score || max_items == 0) row.push_back(r.score ? csv::format_double(*r.score) : "");
    for (const auto& name : extras) {
      auto it = r.extra.find(name);
      row.push_back(it == r.extra.end() ? "" : csv::format_double(it->second));
    }
    csv::write_row(out, row);
  }
}

std::string serialize(const Corpus& corpus) {
  std::string out;
  for (const auto& r : corpus.records) {
    out += record_json(r).dump();
    out.push_back('\n');
  }
  return out;
}

double target_score(const ResponseRecord& record) {
  if (record.score) return *record.score;
  if (record.items.empty()) {
    throw DataError("record '" + record.id + "' has no answered items and no score");
  }
  const int sum = std::accumulate(record.items.begin(), record.items.end(), 0);
  return static_cast<double>(sum) / static_cast<double>(record.items.size());
}

Corpus filter_min_length(const Corpus& corpus, std::size_t min_words) {
  Corpus out;
  out.source = corpus.source;
  out.history = corpus.history;
  for (const auto& r : corpus.records) {
    if (word_count(r.text) >= min_words) out.records.push_back(r);
  }
  out.history.push_back("min_words>=" + std::to_string(min_words) + ": " +
                        std::to_string(corpus.size()) + " -> " + std::to_string(out.size()));
  return out;
}

Split split(const Corpus& corpus, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw UsageError("train_fraction must lie in the open interval (0, 1)");
  }
  if (corpus.empty()) throw DataError("cannot split an empty corpus");
  const std::size_t n = corpus.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(spec.seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(order[i], order[uniform_index(rng, i + 1)]);
  }
  const auto n_train =
      static_cast<std::size_t>(std::llround(spec.train_fraction * static_cast<double>(n)));
  std::vector<char> in_train(n, 0);
  for (std::size_t i = 0; i < n_train; ++i) in_train[order[i]] = 1;

  Split out;
  for (Corpus* side : {&out.train, &out.test}) {
    side->source = corpus.source;
    side->history = corpus.history;
  }
  std::ostringstream note;
  note << "split train_fraction=" << spec.train_fraction << " seed=" << spec.seed;
  out.train.history.push_back(note.str() + " side=train");
  out.test.history.push_back(note.str() + " side=test");
  for (std::size_t i = 0; i < n; ++i) {
    (in_train[i] ? out.train : out.test).records.push_back(corpus.records[i]);
  }
  return out;
}

}  // namespace textrait
