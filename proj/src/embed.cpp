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

#include "textrait/embed.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>

#include "textrait/csv.hpp"
#include "textrait/error.hpp"
#include "textrait/kernels.hpp"

namespace textrait {
namespace {

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const auto next = line.find(' ', pos);
    const auto end = next == std::string_view::npos ? line.size() : next;
    if (end > pos) out.push_back(line.substr(pos, end - pos));
    pos = end + 1;
  }
  return out;
}

bool is_unsigned(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

void EmbeddingTable::add(std::string word, std::span<const double> vector) {
  if (vector.size() != dimension_) {
    throw DataError("embedding for '" + word + "' has " + std::to_string(vector.size()) +
                    " components, expected " + std::to_string(dimension_));
  }
  if (!index_.emplace(word, words_.size()).second) {
    throw DataError("duplicate embedding word '" + word + "'");
  }
  words_.push_back(std::move(word));
  data_.insert(data_.end(), vector.begin(), vector.end());
}

const double* EmbeddingTable::find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  return it == index_.end() ? nullptr : data_.data() + it->second * dimension_;
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open embedding file " + path.string());
  std::optional<EmbeddingTable> table;
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_spaces(line);
    if (!table && fields.size() == 2 && is_unsigned(fields[0]) && is_unsigned(fields[1])) {
      continue;  // `N d` header
    }
    const auto where = path.string() + ":" + std::to_string(line_no);
    if (fields.size() < 2) throw DataError(where + ": expected a word followed by components");
    if (!table) table.emplace(fields.size() - 1);
    if (fields.size() - 1 != table->dimension()) {
      throw DataError(where + ": " + std::to_string(fields.size() - 1) + " components, expected " +
                      std::to_string(table->dimension()));
    }
    values.clear();
    for (std::size_t i = 1; i < fields.size(); ++i) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(fields[i].data(), fields[i].data() + fields[i].size(), v);
      if (ec != std::errc() || ptr != fields[i].data() + fields[i].size() || !std::isfinite(v)) {
        throw DataError(where + ": component " + std::to_string(i) + " ('" + std::string(fields[i]) +
                        "') is not a finite number");
      }
      values.push_back(v);
    }
    try {
      table->add(std::string(fields[0]), values);
    } catch (const DataError& e) {
      throw DataError(where + ": " + e.what());
    }
  }
  if (!table) throw DataError(path.string() + ": no embedding entries");
  table->set_source(path.string());
  return std::move(*table);
}

void save_embeddings(const EmbeddingTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write embedding file " + path.string());
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << table.words()[i];
    for (double v : table.vector(i)) out << ' ' << csv::format_double(v);
    out << '\n';
  }
}

DocVector doc_vector(const EmbeddingTable& table, std::span<const std::string> tokens) {
  DocVector out;
  out.values.assign(table.dimension(), 0.0);
  // Occurrences per table row, accumulated in row order so the result does
  // not depend on token order.
  std::map<const double*, std::size_t> counts;
  std::size_t hits = 0;
  for (const auto& t : tokens) {
    if (const double* v = table.find(t)) {
      ++counts[v];
      ++hits;
    }
  }
  out.coverage = tokens.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(tokens.size());
  if (hits == 0) {
    out.empty = true;
    return out;
  }
  for (auto [v, count] : counts) {
    kernels::axpy(static_cast<double>(count), {v, table.dimension()}, out.values);
  }
  const auto n = static_cast<double>(hits);
  for (double& x : out.values) x /= n;
  return out;
}

}  // namespace textrait
