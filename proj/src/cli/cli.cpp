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

#include "cli/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "cli/config.hpp"
#include "cli/log.hpp"
#include "textrait/analyze.hpp"
#include "textrait/csv.hpp"
#include "textrait/error.hpp"
#include "textrait/kernels.hpp"
#include "textrait/lda.hpp"
#include "textrait/model_file.hpp"
#include "textrait/random.hpp"
#include "textrait/synth.hpp"

namespace textrait::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::size_t threads = 1;
  std::string data;
  std::string model;
  std::string input;
  bool holdout = false;
};

// Output directory of one command. The directory is created on the first
// write, so a command that fails validation leaves nothing behind.
class Output {
 public:
  Output(fs::path dir, std::string command) : dir_(std::move(dir)), command_(std::move(command)) {}

  const fs::path& dir() const { return dir_; }

  fs::path path(const std::string& name) {
    fs::create_directories(dir_);
    files_.insert(name);
    return dir_ / name;
  }

  void write(const std::string& name, const std::string& content) {
    std::ofstream out(path(name), std::ios::binary);
    if (!out) throw DataError("cannot write " + (dir_ / name).string());
    out << content;
    if (!out) throw DataError("failed writing " + (dir_ / name).string());
    log(LogLevel::info, "wrote ", (dir_ / name).string());
  }

  void finish(const RunConfig& config, std::size_t threads) {
    write("effective_config.json", to_json(config).dump(2) + "\n");
    Json files = Json::array();
    for (const auto& name : files_) {
      files.push_back({{"path", name}, {"bytes", fs::file_size(dir_ / name)}, {"digest", file_digest(dir_ / name)}});
    }
    const Json manifest{{"command", command_},
                        {"version", kVersion},
                        {"seed", config.seed},
                        {"threads", threads},
                        {"kernels", std::string(kernels::isa_name(kernels::active_isa()))},
                        {"files", files}};
    std::ofstream out(dir_ / "manifest.json", std::ios::binary);
    out << manifest.dump(2) << "\n";
  }

 private:
  fs::path dir_;
  std::string command_;
  std::set<std::string> files_;
};

void require_file(const std::string& path, const std::string& what) {
  if (path.empty()) throw UsageError("no " + what + " given");
  if (!fs::is_regular_file(path)) throw UsageError(what + " not found: " + path);
}

void require_dataset(const RunConfig& c) {
  if (c.dataset_path.empty()) throw UsageError("no dataset: set dataset.path in the config or pass --data");
  require_file(c.dataset_path, "dataset");
}

Corpus load_corpus(const RunConfig& c) {
  require_dataset(c);
  const auto format = c.dataset_format.empty() ? format_from_path(c.dataset_path) : parse_format(c.dataset_format);
  Corpus corpus = load_dataset(c.dataset_path, format);
  log(LogLevel::info, "loaded ", corpus.size(), " records from ", c.dataset_path);
  return corpus;
}

// Loads the tables the given kinds need. With `strict`, a missing table is a
// usage error; otherwise the resource stays empty and the affected grid
// cells fail on their own.
FeaturizerResources load_resources(RunConfig& c, const std::vector<FeaturizerKind>& kinds, bool strict) {
  FeaturizerResources res;
  const bool want_embed = std::count(kinds.begin(), kinds.end(), FeaturizerKind::embed) > 0;
  const bool want_lexicon = std::count(kinds.begin(), kinds.end(), FeaturizerKind::lexicon) > 0;
  if (want_embed && (strict || !c.embeddings_path.empty())) {
    require_file(c.embeddings_path, "embedding table (featurizer.embeddings)");
    res.embeddings = std::make_shared<const EmbeddingTable>(load_embeddings(c.embeddings_path));
  }
  if (want_lexicon && (strict || !c.lexicon_path.empty())) {
    require_file(c.lexicon_path, "category lexicon (featurizer.lexicon)");
    res.lexicon = std::make_shared<const CategoryLexicon>(load_lexicon(c.lexicon_path));
  }
  if (!c.stopwords_path.empty()) {
    require_file(c.stopwords_path, "stopword list (featurizer.stopwords)");
    c.featurizer.tfidf.stopwords = load_stopwords(c.stopwords_path);
  }
  return res;
}

SplitSpec run_split(const RunConfig& c) { return {c.train_fraction, derive_seed(c.seed, "split")}; }

ForestConfig run_forest(const RunConfig& c) {
  ForestConfig f = c.forest;
  f.seed = derive_seed(c.seed, "forest");
  return f;
}

EvalReport make_report(const FeaturizerSpec& spec, const ForestConfig& forest, const SplitSpec& split,
                       std::size_t min_length, std::size_t n_train, std::size_t n_test, const CorrelationResult& r,
                       const std::string& fingerprint) {
  EvalReport rep;
  rep.featurizer = std::string(to_string(spec.kind));
  rep.parameters = to_json(spec).dump();
  rep.forest = to_json(forest).dump();
  rep.split = to_json(split).dump();
  rep.min_length = min_length;
  rep.n_train = n_train;
  rep.n_test = n_test;
  rep.r = r.r;
  rep.p = r.p_two_sided;
  rep.fingerprint = fingerprint;
  rep.timestamp = utc_timestamp();
  return rep;
}

std::string predictions_csv(std::span<const Prediction> rows) {
  std::ostringstream out;
  out << "id,actual,predicted\n";
  for (const auto& p : rows) {
    out << csv::escape(p.id) << ',' << csv::format_double(p.actual) << ',' << csv::format_double(p.predicted) << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------

void cmd_ingest(RunConfig& c, const Options& o) {
  const Corpus corpus = load_corpus(c);
  Output out(c.output_dir, "ingest");
  out.write("corpus.jsonl", serialize(corpus));
  std::set<std::size_t> lengths{0, 50, 100, 150, 200, c.min_length};
  std::ostringstream summary;
  summary << "min_length,records\n";
  for (auto len : lengths) summary << len << ',' << filter_min_length(corpus, len).size() << '\n';
  out.write("ingest_summary.csv", summary.str());
  out.finish(c, o.threads);
}

void cmd_synth(RunConfig& c, const Options& o) {
  SynthConfig sc = c.synth;
  sc.seed = derive_seed(c.seed, "synth");
  const SynthResult result = generate(sc);
  Output out(c.output_dir, "synth");
  const auto format = parse_format(c.synth_format);
  const std::string dataset_name = format == DatasetFormat::csv ? "dataset.csv" : "dataset.jsonl";
  save_dataset(result.corpus, out.path(dataset_name), format);
  save_embeddings(result.embeddings, out.path("embeddings.txt"));
  save_lexicon(result.lexicon, out.path("lexicon.dic"));
  const Json info{{"n_docs", sc.n_docs}, {"signal_strength", sc.signal_strength}, {"oracle_r", result.oracle_r}};
  out.write("synth.json", info.dump(2) + "\n");
  out.finish(c, o.threads);
  std::cout << "oracle_r " << csv::format_double(result.oracle_r) << "\n";
}

void cmd_train(RunConfig& c, const Options& o) {
  require_dataset(c);
  FeaturizerResources res = load_resources(c, {c.featurizer.kind}, true);
  const Corpus corpus = load_corpus(c);
  const Corpus filtered = filter_min_length(corpus, c.min_length);
  if (filtered.size() < 2) throw DataError("fewer than 2 records remain after the length filter");
  const SplitSpec split_spec = run_split(c);
  const Split parts = split(filtered, split_spec);
  const FeaturizerSpec spec = seeded_spec(c.featurizer, c.seed);
  const ForestConfig forest = run_forest(c);

  log(LogLevel::info, "training ", to_string(spec.kind), " on ", parts.train.size(), " records");
  TrainedPipeline pipeline = train_pipeline(spec, res, forest, parts.train, o.threads);
  const auto fitted = predict(pipeline, parts.train, o.threads);
  const Scored in_sample = score(parts.train, fitted);

  Output out(c.output_dir, "train");
  ModelFile model{std::move(pipeline), split_spec, c.min_length, c.seed,
                  evaluation_fingerprint(spec, forest, split_spec, c.min_length), {}, {}};
  if (spec.kind == FeaturizerKind::embed) {
    fs::create_directories(out.dir());
    model.embeddings_path =
        fs::relative(fs::absolute(c.embeddings_path), fs::absolute(out.dir())).generic_string();
    model.embeddings_digest = file_digest(c.embeddings_path);
  }
  save_model(model, out.path("model.json"));
  out.path("model.bin");

  const EvalReport rep = make_report(spec, forest, split_spec, c.min_length, parts.train.size(),
                                     parts.test.size(), in_sample.correlation, model.fingerprint);
  out.write("train_report.json", to_json_string(rep) + "\n");
  Json ids{{"train", Json::array()}, {"test", Json::array()}};
  for (const auto& r : parts.train.records) ids["train"].push_back(r.id);
  for (const auto& r : parts.test.records) ids["test"].push_back(r.id);
  out.write("split.json", ids.dump(2) + "\n");
  c.model_path = (out.dir() / "model.json").generic_string();
  out.finish(c, o.threads);
}

std::string resolve_model_path(const RunConfig& c, const Options& o) {
  const std::string path = o.model.empty() ? c.model_path : o.model;
  require_file(path, "model file (--model)");
  return path;
}

void cmd_evaluate(RunConfig& c, const Options& o) {
  const std::string model_path = resolve_model_path(c, o);
  require_dataset(c);
  const ModelFile model = load_model(model_path);
  const Corpus corpus = load_corpus(c);
  const Corpus filtered = filter_min_length(corpus, model.min_length);
  Corpus target = filtered;
  std::size_t n_train = 0;
  if (o.holdout) {
    if (filtered.empty()) throw UsageError("dataset has no records to evaluate");
    Split parts = split(filtered, model.split);
    n_train = parts.train.size();
    target = std::move(parts.test);
  }
  if (target.empty()) throw UsageError("dataset has no records to evaluate");
  if (target.size() < 3) throw UsageError("evaluation needs at least 3 records, got " + std::to_string(target.size()));

  const auto predicted = predict(model.pipeline, target, o.threads);
  const Scored scored = score(target, predicted);
  const auto& f = model.pipeline.featurizer;
  const EvalReport rep = make_report(f.spec(), model.pipeline.forest.config(), model.split, model.min_length, n_train,
                                     target.size(), scored.correlation, model.fingerprint);
  Output out(c.output_dir, "evaluate");
  out.write("predictions.csv", predictions_csv(scored.rows));
  out.write("report.json", to_json_string(rep) + "\n");
  c.model_path = model_path;
  out.finish(c, o.threads);
  std::cout << "r " << csv::format_double(rep.r) << " p " << csv::format_double(rep.p) << " n " << rep.n_test << "\n";
}

void cmd_grid(RunConfig& c, const Options& o) {
  require_dataset(c);
  std::vector<FeaturizerKind> kinds;
  for (const auto& k : c.grid_featurizers) kinds.push_back(parse_featurizer_kind(k));
  const FeaturizerResources res = load_resources(c, kinds, false);
  const Corpus corpus = load_corpus(c);

  GridSpec spec;
  for (auto k : kinds) {
    FeaturizerSpec s = c.featurizer;
    s.kind = k;
    spec.featurizers.push_back(s);
  }
  spec.min_lengths = c.grid_min_lengths;
  spec.forest = c.forest;
  spec.train_fraction = c.train_fraction;
  spec.seed = c.seed;
  const GridResult grid = run_grid(corpus, spec, res, o.threads);

  Output out(c.output_dir, "grid");
  std::ostringstream csv_out;
  write_grid_csv(grid, csv_out);
  out.write("grid.csv", csv_out.str());
  const std::string table = grid_table(grid);
  out.write("grid.txt", table);
  std::ostringstream reports;
  for (const auto& cell : grid.cells) {
    if (cell.result) reports << Json::parse(to_json_string(cell.result->report)).dump() << '\n';
  }
  out.write("grid_reports.jsonl", reports.str());
  out.finish(c, o.threads);
  std::cout << table;
  for (const auto& cell : grid.cells) {
    if (!cell.result) log(LogLevel::warn, "cell ", to_string(cell.kind), "/", cell.min_length, " failed: ", cell.error);
  }
}

void cmd_topics(RunConfig& c, const Options& o) {
  const Corpus corpus = load_corpus(c);
  const Corpus filtered = filter_min_length(corpus, c.min_length);
  LdaOptions options = c.featurizer.lda;
  options.seed = derive_seed(c.seed, "topics");
  const TopicModel model = fit_lda(filtered, options);
  const TopicReport report = topic_correlations(model, filtered, c.topics_top_n);
  Output out(c.output_dir, "topics");
  std::ostringstream cloud, summary;
  write_word_cloud_csv(report, cloud);
  write_topic_report_csv(report, summary);
  out.write("word_cloud.csv", cloud.str());
  out.write("topic_report.csv", summary.str());
  out.finish(c, o.threads);
}

std::string group_text(const GroupReport& g) {
  std::ostringstream out;
  out << (g.attribute == GroupAttribute::gender ? "gender" : "job_family") << "\n";
  for (const auto& s : g.groups) {
    out << "  " << std::left << std::setw(16) << s.label << " n=" << std::setw(6) << s.count
        << " mean=" << std::fixed << std::setprecision(4) << s.mean << "\n";
  }
  if (g.cohens_d) out << "  cohen's d (female - male) = " << std::setprecision(4) << *g.cohens_d << "\n";
  if (g.anova) {
    out << "  anova F(" << g.anova->df_between << ", " << g.anova->df_within << ") = " << std::setprecision(4)
        << g.anova->f << ", p = " << std::setprecision(6) << g.anova->p << "\n";
  }
  for (const auto& n : g.notes) out << "  note: " << n << "\n";
  return out.str();
}

void cmd_analyze(RunConfig& c, const Options& o) {
  const std::string model_path = resolve_model_path(c, o);
  require_dataset(c);
  if (!c.easy_words_path.empty()) require_file(c.easy_words_path, "easy-word list (metrics.easy_words)");
  if (!c.pos_lexicon_path.empty()) require_file(c.pos_lexicon_path, "POS lexicon (metrics.pos_lexicon)");
  const ModelFile model = load_model(model_path);
  const Corpus corpus = filter_min_length(load_corpus(c), model.min_length);
  if (corpus.empty()) throw UsageError("dataset has no records to analyze");
  const auto predicted = predict(model.pipeline, corpus, o.threads);

  CorrelateOptions copt;
  if (!c.pos_lexicon_path.empty()) copt.pos = PosLexicon::with_overrides(c.pos_lexicon_path);
  if (!c.easy_words_path.empty()) copt.easy_words = load_word_list(c.easy_words_path);
  const auto rows = correlate_outputs(predicted, corpus, copt);
  const auto gender = group_report(predicted, corpus, GroupAttribute::gender);
  const auto family = group_report(predicted, corpus, GroupAttribute::job_family);

  Output out(c.output_dir, "analyze");
  std::ostringstream pred;
  pred << "id,predicted\n";
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    pred << csv::escape(corpus.records[i].id) << ',' << csv::format_double(predicted[i]) << '\n';
  }
  out.write("predictions.csv", pred.str());
  std::ostringstream cor, g1, g2;
  write_correlates_csv(rows, cor);
  write_group_csv(gender, g1);
  write_group_csv(family, g2);
  out.write("correlates.csv", cor.str());
  out.write("groups_gender.csv", g1.str());
  out.write("groups_job_family.csv", g2.str());

  std::ostringstream text;
  text << "correlations with predicted score (n = " << corpus.size() << ")\n";
  for (const auto& r : rows) {
    text << "  " << std::left << std::setw(20) << r.metric;
    if (r.result) {
      text << " r=" << std::fixed << std::setprecision(4) << r.result->r << " p=" << std::setprecision(6)
           << r.result->p_two_sided << " n=" << r.result->n << "\n";
    } else {
      text << " skipped: " << r.note << "\n";
    }
  }
  text << "\n" << group_text(gender) << "\n" << group_text(family);
  out.write("analysis.txt", text.str());
  c.model_path = model_path;
  out.finish(c, o.threads);
  std::cout << text.str();
}

// Text rendering of a grid CSV or an evaluation report.
void cmd_report(RunConfig& c, const Options& o) {
  require_file(o.input, "report input (--input)");
  std::ifstream in(o.input, std::ios::binary);
  std::ostringstream text;
  if (fs::path(o.input).extension() == ".json") {
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(o.input + " is not valid JSON: " + e.what());
    }
    for (const char* key : {"featurizer", "min_length", "n_train", "n_test", "r", "p", "fingerprint", "timestamp"}) {
      if (j.contains(key)) text << std::left << std::setw(12) << key << ' ' << j[key].dump() << '\n';
    }
  } else {
    csv::Reader reader(in);
    auto header = reader.next();
    if (!header || *header != std::vector<std::string>{"featurizer", "min_length", "r", "p", "n"}) {
      throw DataError(o.input + ": expected a grid CSV with header featurizer,min_length,r,p,n");
    }
    std::vector<std::string> kinds;
    std::vector<std::string> lengths;
    std::map<std::pair<std::string, std::string>, std::string> cells;
    std::optional<std::pair<std::string, std::string>> best;
    double best_r = -2.0;
    while (auto next = reader.next()) {
      const auto& row = *next;
      if (row.size() != 5) throw DataError(o.input + ": grid rows need 5 fields");
      if (std::find(kinds.begin(), kinds.end(), row[0]) == kinds.end()) kinds.push_back(row[0]);
      if (std::find(lengths.begin(), lengths.end(), row[1]) == lengths.end()) lengths.push_back(row[1]);
      cells[{row[0], row[1]}] = row[2];
      if (!row[2].empty() && std::stod(row[2]) > best_r) {
        best_r = std::stod(row[2]);
        best = std::make_pair(row[0], row[1]);
      }
    }
    text << std::left << std::setw(12) << "featurizer";
    for (const auto& l : lengths) text << std::right << std::setw(12) << ("min " + l);
    text << '\n';
    for (const auto& k : kinds) {
      text << std::left << std::setw(12) << k;
      for (const auto& l : lengths) {
        std::string v = "failed";
        if (auto it = cells.find({k, l}); it != cells.end() && !it->second.empty()) {
          std::ostringstream s;
          s << std::fixed << std::setprecision(3) << std::stod(it->second);
          v = best && best->first == k && best->second == l ? "[" + s.str() + "]" : s.str();
        }
        text << std::right << std::setw(12) << v;
      }
      text << '\n';
    }
    if (best) text << "\nbest: " << best->first << " at min_length " << best->second << '\n';
  }
  Output out(c.output_dir, "report");
  out.write("report.txt", text.str());
  out.finish(c, o.threads);
  std::cout << text.str();
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"textrait: text representations and random-forest scoring for interview responses"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  std::uint64_t seed = 0;
  app.add_option("--config", o.config_path, "JSON run configuration");
  auto* seed_opt = app.add_option("--seed", seed, "master seed (overrides the config)");
  app.add_option("--out", o.out, "output directory (overrides the config)");
  app.add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--data", o.data, "dataset path (overrides the config)");

  struct Command {
    const char* name;
    const char* help;
    void (*fn)(RunConfig&, const Options&);
  };
  const Command commands[] = {
      {"ingest", "validate a dataset and write its canonical form", cmd_ingest},
      {"train", "fit a featurizer and forest on the training split", cmd_train},
      {"evaluate", "score a model on a dataset", cmd_evaluate},
      {"grid", "evaluate every featurizer at every minimum length", cmd_grid},
      {"topics", "fit LDA and correlate topics with the target", cmd_topics},
      {"analyze", "correlate predictions with language measures and groups", cmd_analyze},
      {"synth", "generate a synthetic corpus with a planted signal", cmd_synth},
      {"report", "render a grid CSV or report JSON as text", cmd_report},
  };
  std::map<std::string, const Command*> by_name;
  for (const auto& cmd : commands) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    by_name[cmd.name] = &cmd;
    if (std::string(cmd.name) == "evaluate" || std::string(cmd.name) == "analyze") {
      sub->add_option("--model", o.model, "model file written by train");
    }
    if (std::string(cmd.name) == "evaluate") {
      sub->add_flag("--holdout", o.holdout, "score the model's held-out test partition only");
    }
    if (std::string(cmd.name) == "report") sub->add_option("--input", o.input, "grid.csv or report JSON")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (*seed_opt) o.seed = seed;

  try {
    RunConfig config = o.config_path.empty() ? RunConfig{} : load_run_config(o.config_path);
    if (o.seed) config.seed = *o.seed;
    if (!o.out.empty()) config.output_dir = o.out;
    if (!o.data.empty()) config.dataset_path = o.data;
    for (auto* sub : app.get_subcommands()) by_name.at(sub->get_name())->fn(config, o);
    return 0;
  } catch (const UsageError& e) {
    log(LogLevel::error, e.what());
    return 2;
  } catch (const DataError& e) {
    log(LogLevel::error, e.what());
    return 3;
  } catch (const std::exception& e) {
    log(LogLevel::error, "internal error: ", e.what());
    return 4;
  }
}

}  // namespace textrait::cli
