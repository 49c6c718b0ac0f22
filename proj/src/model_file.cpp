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

#include "textrait/model_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "textrait/config_json.hpp"
#include "textrait/error.hpp"

namespace textrait {
namespace {

namespace fs = std::filesystem;

class BlobWriter {
 public:
  Json add(std::span<const double> values, std::vector<std::size_t> shape) {
    Json desc{{"offset", count_}, {"shape", shape}};
    for (double v : values) {
      const auto bits = std::bit_cast<std::uint64_t>(v);
      for (int b = 0; b < 8; ++b) bytes_.push_back(static_cast<char>((bits >> (8 * b)) & 0xff));
    }
    count_ += values.size();
    return desc;
  }
  const std::string& bytes() const { return bytes_; }

 private:
  std::string bytes_;
  std::size_t count_ = 0;
};

class BlobReader {
 public:
  explicit BlobReader(std::string bytes) : bytes_(std::move(bytes)) {
    if (bytes_.size() % 8 != 0) throw DataError("model sidecar size is not a multiple of 8 bytes");
  }

  // Reads an array; `expected` shape entries of 0 are wildcards.
  std::vector<double> get(const Json& desc, std::vector<std::size_t> expected, const std::string& what) const {
    std::vector<std::size_t> shape;
    std::size_t offset = 0;
    try {
      shape = desc.at("shape").get<std::vector<std::size_t>>();
      offset = desc.at("offset").get<std::size_t>();
    } catch (const nlohmann::json::exception&) {
      throw DataError("model array '" + what + "' has a malformed descriptor");
    }
    if (shape.size() != expected.size()) throw DataError("model array '" + what + "' has the wrong rank");
    std::size_t n = 1;
    for (std::size_t i = 0; i < shape.size(); ++i) {
      if (expected[i] != 0 && shape[i] != expected[i]) throw DataError("model array '" + what + "' has the wrong shape");
      n *= shape[i];
    }
    if (offset + n > bytes_.size() / 8) throw DataError("model sidecar is too short for array '" + what + "'");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t bits = 0;
      for (int b = 0; b < 8; ++b) {
        bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[(offset + i) * 8 + b])) << (8 * b);
      }
      out[i] = std::bit_cast<double>(bits);
    }
    return out;
  }

 private:
  std::string bytes_;
};

std::string read_file(const fs::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(std::string("cannot open ") + what + " " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << bytes;
  if (!out) throw DataError("failed writing " + path.string());
}

fs::path sidecar_path(const fs::path& json_path) {
  fs::path p = json_path;
  p.replace_extension(".bin");
  if (p == json_path) p += ".bin";
  return p;
}

Json matrix_json(BlobWriter& blob, const Matrix& m) { return blob.add(m.data, {m.rows, m.cols}); }

Matrix matrix_from(const BlobReader& blob, const Json& desc, std::size_t rows, std::size_t cols, const char* what) {
  Matrix m(rows, cols);
  m.data = blob.get(desc, {rows, cols}, what);
  return m;
}

Json featurizer_state(const Featurizer& f, BlobWriter& blob) {
  switch (f.kind()) {
    case FeaturizerKind::tfidf: {
      const auto& model = std::get<TfidfModel>(f.state());
      Json ngrams = Json::array(), orders = Json::array(), df = Json::array(), total = Json::array();
      for (const auto& e : model.vocabulary().entries()) {
        ngrams.push_back(e.ngram);
        orders.push_back(e.order);
        df.push_back(e.document_frequency);
        total.push_back(e.total_count);
      }
      return Json{{"corpus_size", model.corpus_size()},
                  {"ngrams", ngrams},
                  {"orders", orders},
                  {"document_frequency", df},
                  {"total_count", total}};
    }
    case FeaturizerKind::lda: {
      const auto& model = std::get<TopicModel>(f.state());
      return Json{{"terms", model.terms()},
                  {"phi", blob.add(model.phi_matrix(), {model.topics(), model.vocabulary_size()})},
                  {"topic_prior", blob.add(model.topic_prior(), {model.topics()})}};
    }
    case FeaturizerKind::embed:
      return Json::object();  // referenced separately
    case FeaturizerKind::doc2vec: {
      const auto& model = std::get<Doc2VecModel>(f.state());
      return Json{{"words", model.words()},
                  {"counts", model.counts()},
                  {"doc_matrix", matrix_json(blob, model.doc_matrix())},
                  {"word_matrix", matrix_json(blob, model.word_matrix())},
                  {"output_matrix", matrix_json(blob, model.output_matrix())},
                  {"epoch_loss", blob.add(model.epoch_loss(), {model.epoch_loss().size()})}};
    }
    case FeaturizerKind::lexicon: {
      const auto& lex = *std::get<4>(f.state());
      Json cats = Json::array(), pats = Json::array();
      for (const auto& c : lex.categories()) cats.push_back(Json::array({c.id, c.name}));
      for (const auto& p : lex.patterns()) pats.push_back(Json::array({p.pattern, p.category_ids}));
      return Json{{"categories", cats}, {"patterns", pats}};
    }
  }
  return Json::object();
}

Featurizer::State featurizer_from(const FeaturizerSpec& spec, const Json& s, const BlobReader& blob,
                                  const ModelFile& meta, const fs::path& model_dir) {
  switch (spec.kind) {
    case FeaturizerKind::tfidf: {
      const auto ngrams = s.at("ngrams").get<std::vector<std::string>>();
      const auto orders = s.at("orders").get<std::vector<int>>();
      const auto df = s.at("document_frequency").get<std::vector<std::size_t>>();
      const auto total = s.at("total_count").get<std::vector<std::size_t>>();
      if (orders.size() != ngrams.size() || df.size() != ngrams.size() || total.size() != ngrams.size()) {
        throw DataError("tfidf vocabulary arrays differ in length");
      }
      std::vector<VocabEntry> entries;
      for (std::size_t i = 0; i < ngrams.size(); ++i) entries.push_back({ngrams[i], orders[i], df[i], total[i]});
      return TfidfModel(Vocabulary(std::move(entries)), s.at("corpus_size").get<std::size_t>(), spec.tfidf);
    }
    case FeaturizerKind::lda: {
      auto terms = s.at("terms").get<std::vector<std::string>>();
      const std::size_t k = spec.lda.topics;
      auto phi = blob.get(s.at("phi"), {k, terms.size()}, "phi");
      auto prior = blob.get(s.at("topic_prior"), {k}, "topic_prior");
      return TopicModel(std::move(terms), std::move(phi), std::move(prior), spec.lda);
    }
    case FeaturizerKind::embed: {
      const fs::path table_path = model_dir / meta.embeddings_path;
      if (file_digest(table_path) != meta.embeddings_digest) {
        throw DataError("embedding table " + table_path.string() + " changed since the model was trained");
      }
      return Featurizer::State(std::in_place_index<2>,
                               std::make_shared<const EmbeddingTable>(load_embeddings(table_path)));
    }
    case FeaturizerKind::doc2vec: {
      auto words = s.at("words").get<std::vector<std::string>>();
      auto counts = s.at("counts").get<std::vector<std::size_t>>();
      const std::size_t d = spec.doc2vec.dimension;
      const std::size_t n_docs = s.at("doc_matrix").at("shape").at(0).get<std::size_t>();
      auto doc = matrix_from(blob, s.at("doc_matrix"), n_docs, d, "doc_matrix");
      auto word = matrix_from(blob, s.at("word_matrix"), words.size(), d, "word_matrix");
      auto output = matrix_from(blob, s.at("output_matrix"), words.size(), d, "output_matrix");
      Doc2VecModel model(spec.doc2vec, std::move(words), std::move(counts), std::move(doc), std::move(word),
                         std::move(output));
      for (double loss : blob.get(s.at("epoch_loss"), {0}, "epoch_loss")) model.record_epoch_loss(loss);
      return model;
    }
    case FeaturizerKind::lexicon: {
      std::vector<LexiconCategory> cats;
      for (const auto& c : s.at("categories")) cats.push_back({c.at(0).get<int>(), c.at(1).get<std::string>()});
      std::vector<LexiconPattern> pats;
      for (const auto& p : s.at("patterns")) {
        pats.push_back({p.at(0).get<std::string>(), p.at(1).get<std::vector<int>>()});
      }
      return Featurizer::State(std::in_place_index<4>,
                               std::make_shared<const CategoryLexicon>(std::move(cats), std::move(pats)));
    }
  }
  throw InvariantError("unhandled featurizer kind");
}

}  // namespace

std::string file_digest(const fs::path& path) { return hex_digest(read_file(path, "file")); }

void save_model(const ModelFile& model, const fs::path& path) {
  BlobWriter blob;
  const Featurizer& f = model.pipeline.featurizer;
  Json featurizer = to_json(f.spec());
  featurizer["state"] = featurizer_state(f, blob);
  if (f.kind() == FeaturizerKind::embed) {
    if (model.embeddings_path.empty() || model.embeddings_digest.empty()) {
      throw UsageError("embed models need an embedding table reference");
    }
    featurizer["embeddings"] = Json{{"path", model.embeddings_path}, {"digest", model.embeddings_digest}};
  }

  const Forest& forest = model.pipeline.forest;
  Json trees = Json::array();
  std::vector<double> flat;
  for (const auto& t : forest.trees()) {
    flat.clear();
    for (const auto& n : t.nodes) {
      flat.insert(flat.end(), {static_cast<double>(n.feature), n.threshold, static_cast<double>(n.left),
                               static_cast<double>(n.right), n.value});
    }
    trees.push_back(blob.add(flat, {t.nodes.size(), 5}));
  }
  Json forest_json{{"config", to_json(forest.config())},
                   {"n_features", forest.n_features()},
                   {"y_min", forest.y_min()},
                   {"y_max", forest.y_max()},
                   {"trees", trees}};

  const fs::path bin = sidecar_path(path);
  Json root{{"format_version", kModelFormatVersion},
            {"featurizer", featurizer},
            {"forest", forest_json},
            {"training", Json{{"split", to_json(model.split)},
                              {"min_length", model.min_length},
                              {"seed", model.seed},
                              {"fingerprint", model.fingerprint}}},
            {"sidecar", bin.filename().string()}};
  write_file(path, root.dump(2) + "\n");
  write_file(bin, blob.bytes());
}

ModelFile load_model(const fs::path& path) {
  Json root;
  try {
    root = Json::parse(read_file(path, "model file"));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("model file " + path.string() + " is not valid JSON: " + e.what());
  }
  try {
    const int version = root.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      throw DataError("model file " + path.string() + " has format version " + std::to_string(version) +
                      "; this build reads version " + std::to_string(kModelFormatVersion));
    }
    const fs::path dir = path.parent_path();
    const BlobReader blob(read_file(dir / root.at("sidecar").get<std::string>(), "model sidecar"));

    ModelFile model{TrainedPipeline{Featurizer({}, TfidfModel()), Forest()}, {}, 0, 0, {}, {}, {}};
    const Json& training = root.at("training");
    model.split = split_spec_from_json(training.at("split"), "training.split");
    model.min_length = training.at("min_length").get<std::size_t>();
    model.seed = training.at("seed").get<std::uint64_t>();
    model.fingerprint = training.at("fingerprint").get<std::string>();

    Json fj = root.at("featurizer");
    const Json state = fj.at("state");
    fj.erase("state");
    if (fj.contains("embeddings")) {
      model.embeddings_path = fj.at("embeddings").at("path").get<std::string>();
      model.embeddings_digest = fj.at("embeddings").at("digest").get<std::string>();
      fj.erase("embeddings");
    }
    const FeaturizerSpec spec = featurizer_spec_from_json(fj, "featurizer");
    Featurizer featurizer(spec, featurizer_from(spec, state, blob, model, dir));

    const Json& fo = root.at("forest");
    const ForestConfig config = forest_config_from_json(fo.at("config"), "forest.config");
    std::vector<RegressionTree> trees;
    for (const auto& desc : fo.at("trees")) {
      const auto flat = blob.get(desc, {0, 5}, "tree");
      RegressionTree t;
      for (std::size_t i = 0; i + 5 <= flat.size(); i += 5) {
        t.nodes.push_back({static_cast<std::int32_t>(flat[i]), flat[i + 1], static_cast<std::uint32_t>(flat[i + 2]),
                           static_cast<std::uint32_t>(flat[i + 3]), flat[i + 4]});
      }
      trees.push_back(std::move(t));
    }
    Forest forest(config, fo.at("n_features").get<std::size_t>(), fo.at("y_min").get<double>(),
                  fo.at("y_max").get<double>(), std::move(trees));
    if (forest.n_features() != featurizer.dimension()) {
      throw DataError("forest expects " + std::to_string(forest.n_features()) + " features but the featurizer produces " +
                      std::to_string(featurizer.dimension()));
    }
    model.pipeline = TrainedPipeline{std::move(featurizer), std::move(forest)};
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("model file " + path.string() + " is malformed: " + e.what());
  } catch (const UsageError& e) {
    throw DataError("model file " + path.string() + " is malformed: " + e.what());
  }
}

}  // namespace textrait
