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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "textrait/corpus.hpp"
#include "textrait/error.hpp"
#include "textrait/text.hpp"

using namespace textrait;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("textrait_corpus_" + name);
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

Corpus numbered(std::size_t n) {
  Corpus c;
  for (std::size_t i = 0; i < n; ++i) {
    ResponseRecord r;
    r.id = "r" + std::to_string(i);
    r.text = std::string(i % 7 + 1, 'a');
    for (std::size_t w = 0; w < i % 5; ++w) r.text += " word";
    r.items = {static_cast<int>(i % 5) + 1};
    c.records.push_back(r);
  }
  return c;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("target is the mean of answered items unless a score is given") {
  ResponseRecord r;
  r.items = {1, 2, 4};
  CHECK(target_score(r) == doctest::Approx(7.0 / 3.0).epsilon(1e-15));
  r.score = 2.5;
  CHECK(target_score(r) == 2.5);
  ResponseRecord empty;
  CHECK_THROWS_AS(target_score(empty), DataError);
}

TEST_CASE("csv load with blanks, extras and quoting") {
  const auto p = write_temp("ok.csv",
                            "id,text,gender,job_family,item_2,item_1,x_open\n"
                            "a,\"Hello, there\",female,sales,4,,0.5\n"
                            "b,\"multi\nline\",,,,2,\n");
  const Corpus c = load_dataset(p, DatasetFormat::csv);
  REQUIRE(c.size() == 2);
  CHECK(c.records[0].text == "Hello, there");
  CHECK(c.records[0].items == std::vector<int>{4});
  CHECK(c.records[0].gender == Gender::female);
  CHECK(c.records[0].job_family == "sales");
  CHECK(c.records[0].extra.at("x_open") == 0.5);
  CHECK(c.records[1].text == "multi\nline");
  CHECK(c.records[1].gender == Gender::unspecified);
  CHECK(target_score(c.records[1]) == 2.0);
  fs::remove(p);
}

TEST_CASE("malformed rows name the row") {
  auto expect_error = [](const std::string& content, const std::string& needle) {
    const auto p = write_temp("bad.csv", content);
    try {
      load_dataset(p, DatasetFormat::csv);
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
    fs::remove(p);
  };
  expect_error("id,text,item_1\na,x,6\n", "outside 1..5");
  expect_error("id,text,item_1\na,x,3\na,y,2\n", "duplicate id");
  expect_error("id,item_1\na,3\n", "'text'");
  expect_error("id,text\na,x\n", "target");
  expect_error("id,text,item_1\na,x,,\n", "expected");
  expect_error("id,text,gender,item_1\na,x,robot,3\n", "gender");
}

TEST_CASE("jsonl and csv round-trip to the same canonical form") {
  Corpus c = numbered(5);
  c.records[1].gender = Gender::male;
  c.records[2].job_family = "eng";
  c.records[3].extra["x_trait"] = 3.25;
  c.records[4].items.clear();
  c.records[4].score = 4.5;
  const auto pj = fs::temp_directory_path() / "textrait_rt.jsonl";
  const auto pc = fs::temp_directory_path() / "textrait_rt.csv";
  save_dataset(c, pj, DatasetFormat::jsonl);
  save_dataset(c, pc, DatasetFormat::csv);
  const Corpus a = load_dataset(pj, DatasetFormat::jsonl);
  const Corpus b = load_dataset(pc, DatasetFormat::csv);
  CHECK(serialize(a) == serialize(c));
  CHECK(serialize(b) == serialize(c));
  fs::remove(pj);
  fs::remove(pc);
}

TEST_CASE("format helpers") {
  CHECK(format_from_path("x.jsonl") == DatasetFormat::jsonl);
  CHECK(format_from_path("x.json") == DatasetFormat::jsonl);
  CHECK(format_from_path("x.csv") == DatasetFormat::csv);
  CHECK(parse_format("csv") == DatasetFormat::csv);
  CHECK_THROWS_AS(parse_format("xml"), UsageError);
}

TEST_CASE("length filter keeps records at or above the bound") {
  const Corpus c = numbered(20);
  for (std::size_t m : {0, 1, 2, 3, 5}) {
    const Corpus f = filter_min_length(c, m);
    for (const auto& r : f.records) CHECK(tokenize(r.text).size() >= m);
    std::size_t expected = 0;
    for (const auto& r : c.records) expected += tokenize(r.text).size() >= m;
    CHECK(f.size() == expected);
  }
  CHECK(filter_min_length(c, 3).history.size() == 1);
}

TEST_CASE("split is a seeded, order-preserving partition") {
  const Corpus c = numbered(101);
  for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
    const Split s = split(c, {0.8, seed});
    CHECK(s.train.size() == 81);
    CHECK(s.test.size() == 20);
    std::set<std::string> ids;
    for (const auto& r : s.train.records) ids.insert(r.id);
    for (const auto& r : s.test.records) CHECK(ids.insert(r.id).second);
    CHECK(ids.size() == 101);
    auto index = [](const ResponseRecord& r) { return std::stoi(r.id.substr(1)); };
    CHECK(std::is_sorted(s.train.records.begin(), s.train.records.end(),
                         [&](const auto& a, const auto& b) { return index(a) < index(b); }));
    const Split again = split(c, {0.8, seed});
    CHECK(serialize(again.test) == serialize(s.test));
  }
  CHECK(serialize(split(c, {0.8, 1}).test) != serialize(split(c, {0.8, 2}).test));
}

}  // TEST_SUITE
