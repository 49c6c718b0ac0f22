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

#include <fstream>
#include <sstream>

#include "textrait/error.hpp"

namespace textrait::cli {
namespace {

void reject_seed(const Json& block, const std::string& path) {
  if (block.is_object() && block.contains("seed")) {
    throw UsageError("config key '" + path + ".seed' is not allowed; seeds derive from the top-level 'seed'");
  }
}

Json without_seed(Json j) {
  j.erase("seed");
  return j;
}

std::vector<SynthGroup> groups_from(const Json& j, const std::string& path) {
  if (!j.is_array()) throw UsageError("config key '" + path + "' must be a list");
  std::vector<SynthGroup> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    JsonFields f(j[i], path + "[" + std::to_string(i) + "]");
    SynthGroup g;
    g.label = f.require("label").get<std::string>();
    g.proportion = f.get<double>("proportion", 0.0);
    g.shift = f.get<double>("shift", 0.0);
    f.finish();
    out.push_back(std::move(g));
  }
  return out;
}

Json groups_json(const std::vector<SynthGroup>& groups) {
  Json out = Json::array();
  for (const auto& g : groups) out.push_back({{"label", g.label}, {"proportion", g.proportion}, {"shift", g.shift}});
  return out;
}

SynthConfig synth_from(const Json& j, const std::string& path, SynthConfig s) {
  JsonFields f(j, path);
  s.n_docs = f.get<std::size_t>("n_docs", s.n_docs);
  s.signal_words = f.get<std::size_t>("signal_words", s.signal_words);
  s.noise_words = f.get<std::size_t>("noise_words", s.noise_words);
  s.length_mean = f.get<double>("length_mean", s.length_mean);
  s.length_sd = f.get<double>("length_sd", s.length_sd);
  s.min_doc_length = f.get<std::size_t>("min_doc_length", s.min_doc_length);
  s.length_slope = f.get<double>("length_slope", s.length_slope);
  s.signal_strength = f.get<double>("signal_strength", s.signal_strength);
  s.base_signal_rate = f.get<double>("base_signal_rate", s.base_signal_rate);
  s.items = f.get<std::size_t>("items", s.items);
  s.item_noise = f.get<double>("item_noise", s.item_noise);
  s.embedding_dimension = f.get<std::size_t>("embedding_dimension", s.embedding_dimension);
  s.embedding_signal = f.get<double>("embedding_signal", s.embedding_signal);
  if (const Json* g = f.find("genders"); g && !g->is_null()) s.genders = groups_from(*g, f.child_path("genders"));
  if (const Json* g = f.find("job_families"); g && !g->is_null()) {
    s.job_families = groups_from(*g, f.child_path("job_families"));
  }
  reject_seed(j, path);
  f.finish();
  return s;
}

Json synth_json(const SynthConfig& s) {
  return Json{{"n_docs", s.n_docs},
              {"signal_words", s.signal_words},
              {"noise_words", s.noise_words},
              {"length_mean", s.length_mean},
              {"length_sd", s.length_sd},
              {"min_doc_length", s.min_doc_length},
              {"length_slope", s.length_slope},
              {"signal_strength", s.signal_strength},
              {"base_signal_rate", s.base_signal_rate},
              {"items", s.items},
              {"item_noise", s.item_noise},
              {"embedding_dimension", s.embedding_dimension},
              {"embedding_signal", s.embedding_signal},
              {"genders", groups_json(s.genders)},
              {"job_families", groups_json(s.job_families)}};
}

}  // namespace

RunConfig parse_run_config(const Json& j) {
  RunConfig c;
  JsonFields root(j, "");
  c.seed = root.get<std::uint64_t>("seed", c.seed);
  c.output_dir = root.get<std::string>("output_dir", c.output_dir);
  c.min_length = root.get<std::size_t>("min_length", c.min_length);
  c.model_path = root.get<std::string>("model", c.model_path);

  if (const Json* d = root.find("dataset"); d && !d->is_null()) {
    JsonFields f(*d, "dataset");
    c.dataset_path = f.get<std::string>("path", c.dataset_path);
    c.dataset_format = f.get<std::string>("format", c.dataset_format);
    f.finish();
    if (!c.dataset_format.empty()) parse_format(c.dataset_format);
  }
  if (const Json* s = root.find("split"); s && !s->is_null()) {
    reject_seed(*s, "split");
    c.train_fraction = split_spec_from_json(*s, "split", SplitSpec{c.train_fraction, 0}).train_fraction;
  }
  if (const Json* fe = root.find("featurizer"); fe && !fe->is_null()) {
    JsonFields f(*fe, "featurizer");
    if (f.has("kind")) c.featurizer.kind = parse_featurizer_kind(f.get<std::string>("kind", ""));
    if (const Json* b = f.find("tfidf"); b && !b->is_null()) {
      c.featurizer.tfidf = tfidf_options_from_json(*b, "featurizer.tfidf", c.featurizer.tfidf);
    }
    if (const Json* b = f.find("lda"); b && !b->is_null()) {
      reject_seed(*b, "featurizer.lda");
      c.featurizer.lda = lda_options_from_json(*b, "featurizer.lda", c.featurizer.lda);
    }
    if (const Json* b = f.find("doc2vec"); b && !b->is_null()) {
      reject_seed(*b, "featurizer.doc2vec");
      c.featurizer.doc2vec = doc2vec_config_from_json(*b, "featurizer.doc2vec", c.featurizer.doc2vec);
    }
    c.embeddings_path = f.get<std::string>("embeddings", c.embeddings_path);
    c.lexicon_path = f.get<std::string>("lexicon", c.lexicon_path);
    c.stopwords_path = f.get<std::string>("stopwords", c.stopwords_path);
    f.finish();
  }
  if (const Json* fo = root.find("forest"); fo && !fo->is_null()) {
    reject_seed(*fo, "forest");
    c.forest = forest_config_from_json(*fo, "forest", c.forest);
  }
  if (const Json* g = root.find("grid"); g && !g->is_null()) {
    JsonFields f(*g, "grid");
    c.grid_featurizers = f.get<std::vector<std::string>>("featurizers", c.grid_featurizers);
    c.grid_min_lengths = f.get<std::vector<std::size_t>>("min_lengths", c.grid_min_lengths);
    f.finish();
    for (const auto& k : c.grid_featurizers) parse_featurizer_kind(k);
    if (c.grid_featurizers.empty() || c.grid_min_lengths.empty()) {
      throw UsageError("grid.featurizers and grid.min_lengths must be nonempty");
    }
  }
  if (const Json* m = root.find("metrics"); m && !m->is_null()) {
    JsonFields f(*m, "metrics");
    c.easy_words_path = f.get<std::string>("easy_words", c.easy_words_path);
    c.pos_lexicon_path = f.get<std::string>("pos_lexicon", c.pos_lexicon_path);
    f.finish();
  }
  if (const Json* t = root.find("topics"); t && !t->is_null()) {
    JsonFields f(*t, "topics");
    c.topics_top_n = f.get<std::size_t>("top_n", c.topics_top_n);
    f.finish();
  }
  if (const Json* s = root.find("synth"); s && !s->is_null()) {
    if (!s->is_object()) throw UsageError("'synth' must be a JSON object");
    Json params = *s;
    if (params.contains("format")) {
      if (!params["format"].is_string()) throw UsageError("config key 'synth.format' has the wrong type");
      c.synth_format = params["format"].get<std::string>();
      parse_format(c.synth_format);
      params.erase("format");
    }
    c.synth = synth_from(params, "synth", c.synth);
  }
  root.finish();
  c.forest.validate();
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  Json j;
  try {
    j = Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config file " + path + " is not valid JSON: " + e.what());
  }
  return parse_run_config(j);
}

Json to_json(const RunConfig& c) {
  Json tfidf = to_json(c.featurizer.tfidf);
  if (tfidf["stopwords"].empty()) tfidf.erase("stopwords");
  return Json{
      {"seed", c.seed},
      {"output_dir", c.output_dir},
      {"min_length", c.min_length},
      {"model", c.model_path},
      {"dataset", {{"path", c.dataset_path}, {"format", c.dataset_format}}},
      {"split", {{"train_fraction", c.train_fraction}}},
      {"featurizer",
       {{"kind", std::string(to_string(c.featurizer.kind))},
        {"tfidf", tfidf},
        {"lda", without_seed(to_json(c.featurizer.lda))},
        {"doc2vec", without_seed(to_json(c.featurizer.doc2vec))},
        {"embeddings", c.embeddings_path},
        {"lexicon", c.lexicon_path},
        {"stopwords", c.stopwords_path}}},
      {"forest", without_seed(to_json(c.forest))},
      {"grid", {{"featurizers", c.grid_featurizers}, {"min_lengths", c.grid_min_lengths}}},
      {"metrics", {{"easy_words", c.easy_words_path}, {"pos_lexicon", c.pos_lexicon_path}}},
      {"topics", {{"top_n", c.topics_top_n}}},
      {"synth", [&] {
         Json s = synth_json(c.synth);
         s["format"] = c.synth_format;
         return s;
       }()},
  };
}

}  // namespace textrait::cli
