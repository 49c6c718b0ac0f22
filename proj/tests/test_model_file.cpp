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
#include <sstream>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "textrait/error.hpp"
#include "textrait/model_file.hpp"

using namespace textrait;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("textrait_model_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

ModelFile trained(FeaturizerKind kind, const fs::path& dir) {
  const Corpus& c = fixture::small_synth().corpus;
  ModelFile m{train_pipeline(fixture::fast_spec(kind), fixture::resources(), fixture::fast_forest(), c),
              SplitSpec{0.8, 3}, 10, 77, "abc", {}, {}};
  if (kind == FeaturizerKind::embed) {
    save_embeddings(fixture::small_synth().embeddings, dir / "emb.txt");
    m.embeddings_path = "emb.txt";
    m.embeddings_digest = file_digest(dir / "emb.txt");
  }
  return m;
}

}  // namespace

TEST_SUITE("model_file") {

TEST_CASE("save, load, save is byte-identical and predicts identically") {
  const Corpus& c = fixture::small_synth().corpus;
  for (auto kind : all_featurizer_kinds()) {
    CAPTURE(to_string(kind));
    const fs::path dir = fresh_dir(std::string(to_string(kind)));
    const ModelFile m = trained(kind, dir);
    save_model(m, dir / "a.json");
    const ModelFile loaded = load_model(dir / "a.json");
    save_model(loaded, dir / "b.json");
    CHECK(slurp(dir / "a.bin") == slurp(dir / "b.bin"));
    std::string a = slurp(dir / "a.json"), b = slurp(dir / "b.json");
    // The sidecar name is the only permitted difference.
    const auto pos = b.find("\"b.bin\"");
    REQUIRE(pos != std::string::npos);
    b.replace(pos, 7, "\"a.bin\"");
    CHECK(a == b);
    CHECK(loaded.pipeline.forest == m.pipeline.forest);
    CHECK(loaded.min_length == 10);
    CHECK(loaded.seed == 77);
    CHECK(predict(loaded.pipeline, c) == predict(m.pipeline, c));
    fs::remove_all(dir);
  }
}

TEST_CASE("version mismatch is a hard error") {
  const fs::path dir = fresh_dir("version");
  save_model(trained(FeaturizerKind::lexicon, dir), dir / "m.json");
  std::string text = slurp(dir / "m.json");
  const auto pos = text.find("\"format_version\": 1");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 19, "\"format_version\": 2");
  std::ofstream(dir / "m.json", std::ios::binary) << text;
  CHECK_THROWS_AS(load_model(dir / "m.json"), DataError);
  fs::remove_all(dir);
}

TEST_CASE("changed embedding table or short sidecar is rejected") {
  const fs::path dir = fresh_dir("emb");
  save_model(trained(FeaturizerKind::embed, dir), dir / "m.json");
  CHECK_NOTHROW(load_model(dir / "m.json"));
  std::ofstream(dir / "emb.txt", std::ios::app) << "extra 1 2 3 4 5 6 7 8\n";
  CHECK_THROWS_AS(load_model(dir / "m.json"), DataError);
  fs::remove_all(dir);

  const fs::path d2 = fresh_dir("short");
  save_model(trained(FeaturizerKind::tfidf, d2), d2 / "m.json");
  fs::resize_file(d2 / "m.bin", fs::file_size(d2 / "m.bin") - 8);
  CHECK_THROWS_AS(load_model(d2 / "m.json"), DataError);
  fs::remove_all(d2);
}

}  // TEST_SUITE
