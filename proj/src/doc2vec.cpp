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

#include "textrait/doc2vec.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "textrait/error.hpp"
#include "textrait/kernels.hpp"
#include "textrait/random.hpp"

namespace textrait {
namespace {

// -log(sigmoid(x)), stable for large |x|.
double neg_log_sigmoid(double x) {
  return x >= 0.0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void fill_uniform(std::span<double> v, Rng& rng, double half_width) {
  for (double& x : v) x = (uniform01(rng) - 0.5) * 2.0 * half_width;
}

// Up to `k` negatives for `target`; a draw equal to the target is redrawn a
// few times and then dropped.
void draw_negatives(const Doc2VecModel& model, std::size_t target, std::size_t k, Rng& rng,
                    std::vector<std::size_t>& out) {
  out.clear();
  const bool single_word = model.words().size() < 2;
  for (std::size_t n = 0; n < k; ++n) {
    for (int attempt = 0; attempt < 16; ++attempt) {
      const std::size_t w = model.sample_negative(uniform01(rng));
      if (w != target) {
        out.push_back(w);
        break;
      }
      if (single_word) break;
    }
  }
}

struct Scratch {
  std::vector<double> hidden;
  std::vector<double> grad_hidden;
  std::vector<std::size_t> context;
  std::vector<std::size_t> negatives;
};

// One prediction of ids[pos]. Returns the loss. With lr > 0 the document
// vector is updated, and the word / output matrices too when the
// corresponding update pointer is non-null (it must alias the read matrix).
double predict_position(std::span<double> doc, const Matrix& words, const Matrix& outputs,
                        std::span<const std::size_t> ids, std::size_t pos, std::size_t window,
                        std::span<const std::size_t> negatives, double lr, Matrix* word_update,
                        Matrix* output_update, Scratch& s) {
  const kernels::Table& k = kernels::active();
  const std::size_t d = doc.size();
  s.context.clear();
  const std::size_t lo = pos >= window ? pos - window : 0;
  const std::size_t hi = std::min(ids.size(), pos + window + 1);
  for (std::size_t j = lo; j < hi; ++j) {
    if (j != pos) s.context.push_back(ids[j]);
  }

  s.hidden.assign(doc.begin(), doc.end());
  for (std::size_t c : s.context) k.axpy(1.0, words.row(c).data(), s.hidden.data(), d);
  const double inv = 1.0 / static_cast<double>(1 + s.context.size());
  k.scale(inv, s.hidden.data(), d);

  s.grad_hidden.assign(d, 0.0);
  double loss = 0.0;
  auto score = [&](std::size_t o, double label) {
    const double dotp = k.dot(s.hidden.data(), outputs.row(o).data(), d);
    loss += label > 0.5 ? neg_log_sigmoid(dotp) : neg_log_sigmoid(-dotp);
    if (lr <= 0.0) return;
    const double g = sigmoid(dotp) - label;
    k.axpy(g, outputs.row(o).data(), s.grad_hidden.data(), d);
    if (output_update) k.axpy(-lr * g, s.hidden.data(), output_update->row(o).data(), d);
  };
  score(ids[pos], 1.0);
  for (std::size_t n : negatives) score(n, 0.0);

  if (lr > 0.0) {
    const double step = -lr * inv;
    k.axpy(step, s.grad_hidden.data(), doc.data(), d);
    if (word_update) {
      for (std::size_t c : s.context) k.axpy(step, s.grad_hidden.data(), word_update->row(c).data(), d);
    }
  }
  return loss;
}

}  // namespace

bool Matrix::all_finite() const {
  return std::all_of(data.begin(), data.end(), [](double v) { return std::isfinite(v); });
}

Doc2VecModel::Doc2VecModel(Doc2VecConfig config, std::vector<std::string> words,
                           std::vector<std::size_t> counts, Matrix doc_matrix, Matrix word_matrix,
                           Matrix output_matrix)
    : config_(config),
      words_(std::move(words)),
      counts_(std::move(counts)),
      doc_(std::move(doc_matrix)),
      word_(std::move(word_matrix)),
      output_(std::move(output_matrix)) {
  const std::size_t d = config_.dimension;
  const std::size_t v = words_.size();
  if (d < 2) throw DataError("doc2vec dimension must be >= 2");
  if (v == 0) throw DataError("doc2vec vocabulary is empty");
  if (counts_.size() != v) throw DataError("doc2vec counts do not match the vocabulary");
  if (std::any_of(counts_.begin(), counts_.end(), [](std::size_t c) { return c == 0; })) {
    throw DataError("doc2vec vocabulary frequencies must be > 0");
  }
  if (word_.rows != v || word_.cols != d || output_.rows != v || output_.cols != d ||
      doc_.cols != d || doc_.data.size() != doc_.rows * d) {
    throw DataError("doc2vec matrix shapes are inconsistent");
  }
  if (!doc_.all_finite() || !word_.all_finite() || !output_.all_finite()) {
    throw DataError("doc2vec parameters contain NaN or Inf");
  }
  index_.reserve(v);
  for (std::size_t i = 0; i < v; ++i) {
    if (!index_.emplace(words_[i], i).second) throw DataError("duplicate doc2vec word '" + words_[i] + "'");
  }
  noise_cdf_.resize(v);
  double total = 0.0;
  for (std::size_t i = 0; i < v; ++i) {
    total += std::pow(static_cast<double>(counts_[i]), 0.75);
    noise_cdf_[i] = total;
  }
  for (double& c : noise_cdf_) c /= total;
}

std::optional<std::size_t> Doc2VecModel::word_index(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Doc2VecModel::sample_negative(double u) const {
  const auto it = std::upper_bound(noise_cdf_.begin(), noise_cdf_.end(), u);
  return std::min(static_cast<std::size_t>(it - noise_cdf_.begin()), noise_cdf_.size() - 1);
}

std::vector<std::size_t> Doc2VecModel::encode(std::span<const std::string> tokens) const {
  std::vector<std::size_t> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (auto i = word_index(t)) ids.push_back(*i);
  }
  return ids;
}

Doc2VecModel train_doc2vec(std::span<const TokenStream> docs, const Doc2VecConfig& config,
                           const Doc2VecObserver& observer) {
  if (config.dimension < 2) throw UsageError("doc2vec dimension must be >= 2");
  if (docs.empty()) throw UsageError("cannot train doc2vec on an empty corpus");
  if (!(config.lr_start > 0.0) || config.lr_end < 0.0) throw UsageError("doc2vec learning rates invalid");

  std::map<std::string, std::size_t> freq;
  for (const auto& doc : docs) {
    for (const auto& t : doc) ++freq[t];
  }
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (auto& [w, c] : freq) {
    if (c >= std::max<std::size_t>(config.min_count, 1)) kept.emplace_back(w, c);
  }
  if (kept.empty()) throw DataError("doc2vec vocabulary is empty (min_count too high or no tokens)");
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> words;
  std::vector<std::size_t> counts;
  for (auto& [w, c] : kept) {
    words.push_back(w);
    counts.push_back(c);
  }

  const std::size_t d = config.dimension;
  Rng init_rng(derive_seed(config.seed, "doc2vec.init"));
  Matrix doc_m(docs.size(), d), word_m(words.size(), d), out_m(words.size(), d);
  fill_uniform(doc_m.data, init_rng, 0.5 / static_cast<double>(d));
  fill_uniform(word_m.data, init_rng, 0.5 / static_cast<double>(d));
  Doc2VecModel model(config, std::move(words), std::move(counts), std::move(doc_m), std::move(word_m),
                     std::move(out_m));

  std::vector<std::vector<std::size_t>> encoded;
  encoded.reserve(docs.size());
  std::size_t total_positions = 0;
  for (const auto& doc : docs) {
    encoded.push_back(model.encode(doc));
    total_positions += encoded.back().size();
  }
  const double schedule = static_cast<double>(std::max<std::size_t>(total_positions * config.epochs, 1));

  Rng rng(derive_seed(config.seed, "doc2vec.train"));
  Scratch scratch;
  std::size_t seen = 0;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    double loss = 0.0;
    for (std::size_t di = 0; di < encoded.size(); ++di) {
      const auto& ids = encoded[di];
      auto doc_vec = model.doc_matrix().row(di);
      for (std::size_t pos = 0; pos < ids.size(); ++pos) {
        const double progress = static_cast<double>(seen++) / schedule;
        const double lr = config.lr_start - (config.lr_start - config.lr_end) * progress;
        draw_negatives(model, ids[pos], config.negative, rng, scratch.negatives);
        loss += predict_position(doc_vec, model.word_matrix(), model.output_matrix(), ids, pos,
                                 config.window, scratch.negatives, lr, &model.word_matrix(),
                                 &model.output_matrix(), scratch);
      }
    }
    if (!model.doc_matrix().all_finite() || !model.word_matrix().all_finite() ||
        !model.output_matrix().all_finite()) {
      throw InvariantError("doc2vec training diverged (non-finite parameters) in epoch " +
                           std::to_string(epoch + 1));
    }
    model.record_epoch_loss(total_positions ? loss / static_cast<double>(total_positions) : 0.0);
    if (observer) observer(model, epoch);
  }
  return model;
}

Doc2VecModel train_doc2vec(const Corpus& train, const Doc2VecConfig& config,
                           const Doc2VecObserver& observer) {
  std::vector<TokenStream> docs;
  docs.reserve(train.size());
  for (const auto& r : train.records) docs.push_back(tokenize(r.text));
  return train_doc2vec(docs, config, observer);
}

InferredVector infer_vector(const Doc2VecModel& model, std::span<const std::string> tokens,
                            std::size_t steps, std::uint64_t seed) {
  const std::size_t d = model.dimension();
  InferredVector out;
  const auto ids = model.encode(tokens);
  if (ids.empty()) {
    out.values.assign(d, 0.0);
    out.empty = true;
    return out;
  }
  Rng rng(seed);
  out.values.resize(d);
  fill_uniform(out.values, rng, 0.5 / static_cast<double>(d));

  const auto& cfg = model.config();
  const double schedule = static_cast<double>(std::max<std::size_t>(steps * ids.size(), 1));
  Scratch scratch;
  std::size_t seen = 0;
  for (std::size_t step = 0; step < steps; ++step) {
    for (std::size_t pos = 0; pos < ids.size(); ++pos) {
      const double progress = static_cast<double>(seen++) / schedule;
      const double lr = cfg.lr_start - (cfg.lr_start - cfg.lr_end) * progress;
      draw_negatives(model, ids[pos], cfg.negative, rng, scratch.negatives);
      predict_position(out.values, model.word_matrix(), model.output_matrix(), ids, pos, cfg.window,
                       scratch.negatives, lr, nullptr, nullptr, scratch);
    }
  }
  return out;
}

double evaluate_loss(const Doc2VecModel& model, std::span<const TokenStream> docs, std::uint64_t seed) {
  if (docs.size() > model.doc_matrix().rows) throw UsageError("evaluate_loss: more documents than the model has");
  Rng rng(seed);
  Scratch scratch;
  double loss = 0.0;
  std::size_t positions = 0;
  std::vector<double> doc_copy;
  for (std::size_t di = 0; di < docs.size(); ++di) {
    const auto ids = model.encode(docs[di]);
    const auto row = model.doc_matrix().row(di);
    doc_copy.assign(row.begin(), row.end());
    for (std::size_t pos = 0; pos < ids.size(); ++pos) {
      draw_negatives(model, ids[pos], model.config().negative, rng, scratch.negatives);
      loss += predict_position(doc_copy, model.word_matrix(), model.output_matrix(), ids, pos,
                               model.config().window, scratch.negatives, 0.0, nullptr, nullptr, scratch);
      ++positions;
    }
  }
  return positions ? loss / static_cast<double>(positions) : 0.0;
}

// ---------------------------------------------------------------------------
// Gradient verification
// ---------------------------------------------------------------------------

namespace {

std::vector<double> hidden_of(const ContextSample& s) {
  std::vector<double> h = s.doc;
  for (const auto& c : s.context) {
    for (std::size_t i = 0; i < h.size(); ++i) h[i] += c[i];
  }
  const double inv = 1.0 / static_cast<double>(1 + s.context.size());
  for (double& x : h) x *= inv;
  return h;
}

double plain_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

double sample_loss(const ContextSample& s) {
  const auto h = hidden_of(s);
  double loss = 0.0;
  for (std::size_t o = 0; o < s.outputs.size(); ++o) {
    const double z = plain_dot(h, s.outputs[o]);
    loss += s.labels[o] ? neg_log_sigmoid(z) : neg_log_sigmoid(-z);
  }
  return loss;
}

SampleGradient sample_gradient(const ContextSample& s) {
  const auto h = hidden_of(s);
  const std::size_t d = h.size();
  SampleGradient g;
  std::vector<double> grad_h(d, 0.0);
  g.outputs.resize(s.outputs.size());
  for (std::size_t o = 0; o < s.outputs.size(); ++o) {
    const double coeff = sigmoid(plain_dot(h, s.outputs[o])) - (s.labels[o] ? 1.0 : 0.0);
    g.outputs[o].resize(d);
    for (std::size_t i = 0; i < d; ++i) {
      g.outputs[o][i] = coeff * h[i];
      grad_h[i] += coeff * s.outputs[o][i];
    }
  }
  const double inv = 1.0 / static_cast<double>(1 + s.context.size());
  g.doc.resize(d);
  for (std::size_t i = 0; i < d; ++i) g.doc[i] = grad_h[i] * inv;
  g.context.assign(s.context.size(), g.doc);
  return g;
}

ContextSample make_sample(const Doc2VecModel& model, std::size_t doc, std::span<const std::size_t> context,
                          std::size_t target, std::span<const std::size_t> negatives) {
  auto copy = [](std::span<const double> r) { return std::vector<double>(r.begin(), r.end()); };
  if (doc >= model.doc_matrix().rows) throw UsageError("make_sample: document index out of range");
  ContextSample s;
  s.doc = copy(model.doc_matrix().row(doc));
  for (std::size_t c : context) s.context.push_back(copy(model.word_matrix().row(c)));
  s.outputs.push_back(copy(model.output_matrix().row(target)));
  s.labels.push_back(1);
  for (std::size_t n : negatives) {
    s.outputs.push_back(copy(model.output_matrix().row(n)));
    s.labels.push_back(0);
  }
  return s;
}

double gradient_check(const ContextSample& sample, const GradientFn& gradient, double step) {
  const SampleGradient analytic = gradient(sample);
  ContextSample probe = sample;
  double worst = 0.0;
  auto check = [&](std::vector<double>& params, const std::vector<double>& grad) {
    if (grad.size() != params.size()) throw InvariantError("gradient shape mismatch");
    for (std::size_t i = 0; i < params.size(); ++i) {
      const double saved = params[i];
      params[i] = saved + step;
      const double up = sample_loss(probe);
      params[i] = saved - step;
      const double down = sample_loss(probe);
      params[i] = saved;
      const double numeric = (up - down) / (2.0 * step);
      const double diff = std::fabs(grad[i] - numeric);
      const double scale = std::max(std::fabs(grad[i]), std::fabs(numeric));
      worst = std::max(worst, scale < 1e-7 ? diff : diff / scale);
    }
  };
  check(probe.doc, analytic.doc);
  if (analytic.context.size() != probe.context.size() || analytic.outputs.size() != probe.outputs.size()) {
    throw InvariantError("gradient shape mismatch");
  }
  for (std::size_t c = 0; c < probe.context.size(); ++c) check(probe.context[c], analytic.context[c]);
  for (std::size_t o = 0; o < probe.outputs.size(); ++o) check(probe.outputs[o], analytic.outputs[o]);
  return worst;
}

}  // namespace textrait
