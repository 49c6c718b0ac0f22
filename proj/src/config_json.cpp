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

#include "textrait/config_json.hpp"

#include <algorithm>
#include <cstdio>

#include "textrait/error.hpp"
#include "textrait/random.hpp"

namespace textrait {

JsonFields::JsonFields(const Json& object, std::string path) : object_(object), path_(std::move(path)) {
  if (!object_.is_object()) {
    throw UsageError((path_.empty() ? std::string("config") : "'" + path_ + "'") + " must be a JSON object");
  }
}

bool JsonFields::has(const std::string& key) const { return object_.contains(key); }

const Json* JsonFields::find(const std::string& key) {
  seen_.insert(key);
  auto it = object_.find(key);
  return it == object_.end() ? nullptr : &*it;
}

const Json& JsonFields::require(const std::string& key) {
  const Json* v = find(key);
  if (!v || v->is_null()) throw UsageError("missing config key '" + child_path(key) + "'");
  return *v;
}

std::string JsonFields::child_path(const std::string& key) const {
  return path_.empty() ? key : path_ + "." + key;
}

void JsonFields::throw_type_error(const std::string& key) const {
  throw UsageError("config key '" + child_path(key) + "' has the wrong type");
}

void JsonFields::finish() const {
  for (auto it = object_.begin(); it != object_.end(); ++it) {
    if (!seen_.contains(it.key())) throw UsageError("unknown config key '" + child_path(it.key()) + "'");
  }
}

namespace {

std::string_view to_string(VocabSelection s) {
  return s == VocabSelection::term_frequency ? "term_frequency" : "document_frequency";
}

VocabSelection parse_selection(const std::string& s, const std::string& path) {
  if (s == "term_frequency") return VocabSelection::term_frequency;
  if (s == "document_frequency") return VocabSelection::document_frequency;
  throw UsageError("config key '" + path + "' must be term_frequency or document_frequency");
}

}  // namespace

Json to_json(const TfidfOptions& options) {
  std::vector<std::string> stop(options.stopwords.begin(), options.stopwords.end());
  std::sort(stop.begin(), stop.end());
  return Json{{"top_k", options.vocabulary.top_k},
              {"orders", options.vocabulary.orders.list()},
              {"selection", std::string(to_string(options.vocabulary.selection))},
              {"stopwords", stop}};
}

Json to_json(const LdaOptions& options) {
  return Json{{"topics", options.topics},         {"alpha", options.effective_alpha()},
              {"beta", options.beta},             {"iterations", options.iterations},
              {"seed", options.seed}};
}

Json to_json(const Doc2VecConfig& c) {
  return Json{{"dimension", c.dimension}, {"window", c.window},         {"negative", c.negative},
              {"epochs", c.epochs},       {"lr_start", c.lr_start},     {"lr_end", c.lr_end},
              {"min_count", c.min_count}, {"infer_steps", c.infer_steps}, {"seed", c.seed}};
}

Json to_json(const ForestConfig& c) {
  return Json{{"n_trees", c.n_trees},
              {"max_features", c.max_features.to_string()},
              {"min_samples_leaf", c.min_samples_leaf},
              {"max_depth", c.max_depth ? Json(*c.max_depth) : Json(nullptr)},
              {"bootstrap", c.bootstrap},
              {"seed", c.seed}};
}

Json to_json(const SplitSpec& s) { return Json{{"train_fraction", s.train_fraction}, {"seed", s.seed}}; }

Json to_json(const FeaturizerSpec& spec) {
  Json j{{"kind", std::string(to_string(spec.kind))}};
  switch (spec.kind) {
    case FeaturizerKind::tfidf: j["tfidf"] = to_json(spec.tfidf); break;
    case FeaturizerKind::lda: j["lda"] = to_json(spec.lda); break;
    case FeaturizerKind::doc2vec: j["doc2vec"] = to_json(spec.doc2vec); break;
    case FeaturizerKind::embed:
    case FeaturizerKind::lexicon: break;
  }
  return j;
}

TfidfOptions tfidf_options_from_json(const Json& j, const std::string& path, TfidfOptions d) {
  JsonFields f(j, path);
  d.vocabulary.top_k = f.get<std::size_t>("top_k", d.vocabulary.top_k);
  if (const Json* orders = f.find("orders"); orders && !orders->is_null()) {
    std::vector<int> list;
    try {
      list = orders->get<std::vector<int>>();
    } catch (const nlohmann::json::exception&) {
      throw UsageError("config key '" + f.child_path("orders") + "' must be a list of integers");
    }
    d.vocabulary.orders = OrderSet::from_list(list);
  }
  if (f.has("selection")) {
    d.vocabulary.selection =
        parse_selection(f.get<std::string>("selection", ""), f.child_path("selection"));
  }
  if (const Json* stop = f.find("stopwords"); stop && !stop->is_null()) {
    try {
      const auto words = stop->get<std::vector<std::string>>();
      d.stopwords = StopwordSet(words.begin(), words.end());
    } catch (const nlohmann::json::exception&) {
      throw UsageError("config key '" + f.child_path("stopwords") + "' must be a list of strings");
    }
  }
  f.finish();
  return d;
}

LdaOptions lda_options_from_json(const Json& j, const std::string& path, LdaOptions d) {
  JsonFields f(j, path);
  d.topics = f.get<std::size_t>("topics", d.topics);
  if (const Json* a = f.find("alpha"); a && !a->is_null()) d.alpha = f.get<double>("alpha", 0.0);
  d.beta = f.get<double>("beta", d.beta);
  d.iterations = f.get<std::size_t>("iterations", d.iterations);
  d.seed = f.get<std::uint64_t>("seed", d.seed);
  f.finish();
  return d;
}

Doc2VecConfig doc2vec_config_from_json(const Json& j, const std::string& path, Doc2VecConfig d) {
  JsonFields f(j, path);
  d.dimension = f.get<std::size_t>("dimension", d.dimension);
  d.window = f.get<std::size_t>("window", d.window);
  d.negative = f.get<std::size_t>("negative", d.negative);
  d.epochs = f.get<std::size_t>("epochs", d.epochs);
  d.lr_start = f.get<double>("lr_start", d.lr_start);
  d.lr_end = f.get<double>("lr_end", d.lr_end);
  d.min_count = f.get<std::size_t>("min_count", d.min_count);
  d.infer_steps = f.get<std::size_t>("infer_steps", d.infer_steps);
  d.seed = f.get<std::uint64_t>("seed", d.seed);
  f.finish();
  return d;
}

ForestConfig forest_config_from_json(const Json& j, const std::string& path, ForestConfig d) {
  JsonFields f(j, path);
  d.n_trees = f.get<std::size_t>("n_trees", d.n_trees);
  if (const Json* mf = f.find("max_features"); mf && !mf->is_null()) {
    if (mf->is_number_unsigned()) {
      d.max_features = MaxFeatures::parse(std::to_string(mf->get<std::size_t>()));
    } else if (mf->is_string()) {
      d.max_features = MaxFeatures::parse(mf->get<std::string>());
    } else {
      throw UsageError("config key '" + f.child_path("max_features") + "' has the wrong type");
    }
  }
  d.min_samples_leaf = f.get<std::size_t>("min_samples_leaf", d.min_samples_leaf);
  if (const Json* md = f.find("max_depth"); md) {
    d.max_depth = md->is_null() ? std::nullopt : std::optional<std::size_t>(f.get<std::size_t>("max_depth", 0));
  }
  d.bootstrap = f.get<bool>("bootstrap", d.bootstrap);
  d.seed = f.get<std::uint64_t>("seed", d.seed);
  f.finish();
  d.validate();
  return d;
}

SplitSpec split_spec_from_json(const Json& j, const std::string& path, SplitSpec d) {
  JsonFields f(j, path);
  d.train_fraction = f.get<double>("train_fraction", d.train_fraction);
  d.seed = f.get<std::uint64_t>("seed", d.seed);
  f.finish();
  if (!(d.train_fraction > 0.0 && d.train_fraction < 1.0)) {
    throw UsageError("config key '" + f.child_path("train_fraction") + "' must lie strictly between 0 and 1");
  }
  return d;
}

FeaturizerSpec featurizer_spec_from_json(const Json& j, const std::string& path) {
  JsonFields f(j, path);
  FeaturizerSpec spec;
  spec.kind = parse_featurizer_kind(f.require("kind").get<std::string>());
  if (const Json* b = f.find("tfidf")) spec.tfidf = tfidf_options_from_json(*b, f.child_path("tfidf"));
  if (const Json* b = f.find("lda")) spec.lda = lda_options_from_json(*b, f.child_path("lda"));
  if (const Json* b = f.find("doc2vec")) spec.doc2vec = doc2vec_config_from_json(*b, f.child_path("doc2vec"));
  f.finish();
  return spec;
}

std::string hex_digest(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

}  // namespace textrait
