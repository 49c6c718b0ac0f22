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

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "textrait/embed.hpp"
#include "textrait/error.hpp"

using namespace textrait;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("textrait_embed_" + name);
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

}  // namespace

TEST_SUITE("embed") {

TEST_CASE("load with and without a header line") {
  const auto a = write_temp("a.txt", "cat 1 2\ndog 3 4\n");
  const auto b = write_temp("b.txt", "2 2\ncat 1 2\ndog 3 4\n");
  for (const auto& p : {a, b}) {
    const EmbeddingTable t = load_embeddings(p);
    CHECK(t.dimension() == 2);
    CHECK(t.size() == 2);
    REQUIRE(t.find("dog") != nullptr);
    CHECK(t.find("dog")[1] == 4.0);
    CHECK(t.find("bird") == nullptr);
    fs::remove(p);
  }
}

TEST_CASE("malformed tables name the line") {
  auto expect = [](const std::string& content, const std::string& needle) {
    const auto p = write_temp("bad.txt", content);
    try {
      load_embeddings(p);
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
    fs::remove(p);
  };
  expect("cat 1 2\ndog 3\n", ":2");
  expect("cat 1 2\ncat 3 4\n", "duplicate");
  expect("cat 1 x\n", ":1");
}

TEST_CASE("doc vector is the occurrence-weighted mean") {
  EmbeddingTable t(2);
  t.add("a", std::vector<double>{1.0, 0.0});
  t.add("b", std::vector<double>{0.0, 3.0});
  const DocVector v = doc_vector(t, std::vector<std::string>{"a", "a", "b", "zzz"});
  CHECK(v.values[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(v.values[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(v.coverage == 0.75);
  CHECK_FALSE(v.empty);
  const DocVector none = doc_vector(t, std::vector<std::string>{"q"});
  CHECK(none.empty);
  CHECK(none.values == std::vector<double>{0.0, 0.0});
  CHECK_THROWS_AS(t.add("a", std::vector<double>{1.0, 1.0}), DataError);
  CHECK_THROWS_AS(t.add("c", std::vector<double>{1.0}), DataError);
}

TEST_CASE("save then load reproduces the table") {
  EmbeddingTable t(3);
  t.add("x", std::vector<double>{0.1, -2.5e-8, 1.0 / 3.0});
  t.add("y", std::vector<double>{4, 5, 6});
  const auto p = fs::temp_directory_path() / "textrait_embed_rt.txt";
  save_embeddings(t, p);
  const EmbeddingTable u = load_embeddings(p);
  CHECK(u.words() == t.words());
  for (std::size_t i = 0; i < 3; ++i) CHECK(u.find("x")[i] == t.find("x")[i]);
  fs::remove(p);
}

}  // TEST_SUITE
