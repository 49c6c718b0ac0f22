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

#include "cli/config.hpp"
#include "doctest.h"
#include "textrait/config_json.hpp"
#include "textrait/error.hpp"

using namespace textrait;
using textrait::cli::parse_run_config;

namespace {

std::string usage_message(const Json& j) {
  try {
    parse_run_config(j);
  } catch (const UsageError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("defaults") {
  const auto c = parse_run_config(Json::object());
  CHECK(c.output_dir == "out");
  CHECK(c.train_fraction == 0.8);
  CHECK(c.featurizer.kind == FeaturizerKind::tfidf);
  CHECK(c.featurizer.tfidf.vocabulary.top_k == 2000);
  CHECK(c.forest.n_trees == 200);
  CHECK(c.grid_min_lengths == std::vector<std::size_t>{50, 100, 150, 200});
}

TEST_CASE("unknown keys are rejected by full path") {
  CHECK(usage_message(Json::parse(R"({"sed": 1})")).find("'sed'") != std::string::npos);
  CHECK(usage_message(Json::parse(R"({"forest": {"ntrees": 5}})")).find("'forest.ntrees'") != std::string::npos);
  CHECK(usage_message(Json::parse(R"({"featurizer": {"lda": {"topic": 5}}})")).find("featurizer.lda.topic") !=
        std::string::npos);
  CHECK(usage_message(Json::parse(R"({"synth": {"genders": [{"label": "x", "prop": 1}]}})"))
            .find("synth.genders[0].prop") != std::string::npos);
}

TEST_CASE("nested seeds are rejected") {
  CHECK(usage_message(Json::parse(R"({"forest": {"seed": 5}})")).find("forest.seed") != std::string::npos);
  CHECK(usage_message(Json::parse(R"({"featurizer": {"doc2vec": {"seed": 5}}})")).find("seed") !=
        std::string::npos);
}

TEST_CASE("type and range errors") {
  CHECK_FALSE(usage_message(Json::parse(R"({"seed": "x"})")).empty());
  CHECK_FALSE(usage_message(Json::parse(R"({"split": {"train_fraction": 1.5}})")).empty());
  CHECK_FALSE(usage_message(Json::parse(R"({"featurizer": {"kind": "bert"}})")).empty());
  CHECK_FALSE(usage_message(Json::parse(R"({"forest": {"n_trees": 0}})")).empty());
  CHECK_FALSE(usage_message(Json::parse(R"({"dataset": {"format": "xml"}})")).empty());
  CHECK_FALSE(usage_message(Json::parse(R"({"grid": {"featurizers": []}})")).empty());
}

TEST_CASE("the effective config echoes every value and parses back to itself") {
  const auto c = parse_run_config(Json::parse(R"({
    "seed": 9, "min_length": 50,
    "featurizer": {"kind": "lda", "lda": {"topics": 7}, "tfidf": {"top_k": 10, "orders": [1]}},
    "forest": {"n_trees": 12, "max_features": "sqrt", "max_depth": 4},
    "synth": {"n_docs": 50, "format": "jsonl"}
  })"));
  const Json echoed = cli::to_json(c);
  CHECK(echoed["featurizer"]["lda"]["topics"] == 7);
  CHECK(echoed["featurizer"]["lda"]["beta"] == 0.01);
  CHECK(echoed["forest"]["max_features"] == "sqrt");
  CHECK(echoed["forest"]["min_samples_leaf"] == 5);
  CHECK_FALSE(echoed["forest"].contains("seed"));
  CHECK(echoed["synth"]["format"] == "jsonl");
  CHECK(cli::to_json(parse_run_config(echoed)) == echoed);
}

TEST_CASE("hex digest") {
  CHECK(hex_digest("") == "cbf29ce484222325");
  CHECK(hex_digest("a").size() == 16);
}

}  // TEST_SUITE
