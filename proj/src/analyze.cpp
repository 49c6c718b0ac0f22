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

#include "textrait/analyze.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "textrait/config_json.hpp"
#include "textrait/csv.hpp"
#include "textrait/error.hpp"
#include "textrait/parallel.hpp"
#include "textrait/random.hpp"
#include "textrait/text.hpp"

namespace textrait {

std::string evaluation_fingerprint(const FeaturizerSpec& spec, const ForestConfig& forest, const SplitSpec& split,
                                   std::size_t min_length) {
  const Json j{{"featurizer", to_json(spec)},
               {"forest", to_json(forest)},
               {"split", to_json(split)},
               {"min_length", min_length}};
  return hex_digest(j.dump());
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

std::string to_json_string(const EvalReport& report, bool with_timestamp) {
  Json j{{"featurizer", report.featurizer},
         {"parameters", Json::parse(report.parameters)},
         {"forest", Json::parse(report.forest)},
         {"split", Json::parse(report.split)},
         {"min_length", report.min_length},
         {"n_train", report.n_train},
         {"n_test", report.n_test},
         {"r", report.r},
         {"p", report.p},
         {"fingerprint", report.fingerprint}};
  if (with_timestamp) j["timestamp"] = report.timestamp;
  return j.dump(2);
}

TrainedPipeline train_pipeline(const FeaturizerSpec& spec, const FeaturizerResources& resources,
                               const ForestConfig& forest, const Corpus& train, std::size_t threads) {
  if (train.empty()) throw DataError("training partition is empty");
  Featurizer featurizer = fit_featurizer(spec, resources, train);
  const FeatureMatrix x = featurizer.transform(train, threads);
  std::vector<double> y;
  y.reserve(train.size());
  for (const auto& r : train.records) y.push_back(target_score(r));
  Forest fitted = fit_forest(x, y, forest, threads);
  return {std::move(featurizer), std::move(fitted)};
}

std::vector<double> predict(const TrainedPipeline& pipeline, const Corpus& corpus, std::size_t threads) {
  return pipeline.forest.predict(pipeline.featurizer.transform(corpus, threads));
}

Scored score(const Corpus& corpus, std::span<const double> predicted) {
  if (predicted.size() != corpus.size()) throw InvariantError("prediction count does not match corpus");
  Scored out;
  std::vector<double> actual;
  actual.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    actual.push_back(target_score(corpus.records[i]));
    out.rows.push_back({corpus.records[i].id, actual.back(), predicted[i]});
  }
  out.correlation = pearson(actual, predicted);
  return out;
}

Evaluation evaluate(const FeaturizerSpec& spec, const FeaturizerResources& resources, const ForestConfig& forest,
                    const Corpus& corpus, const SplitSpec& split_spec, std::size_t min_length, std::size_t threads) {
  const Corpus filtered = filter_min_length(corpus, min_length);
  if (filtered.empty()) throw DataError("no records with at least " + std::to_string(min_length) + " words");
  const Split parts = split(filtered, split_spec);
  if (parts.test.size() < 3) {
    throw DataError("test partition has " + std::to_string(parts.test.size()) + " records, need at least 3");
  }
  const TrainedPipeline pipeline = train_pipeline(spec, resources, forest, parts.train, threads);
  const auto predicted = predict(pipeline, parts.test, threads);
  Scored scored = score(parts.test, predicted);

  Evaluation ev;
  ev.report.featurizer = std::string(to_string(spec.kind));
  ev.report.parameters = to_json(spec).dump();
  ev.report.forest = to_json(forest).dump();
  ev.report.split = to_json(split_spec).dump();
  ev.report.min_length = min_length;
  ev.report.n_train = parts.train.size();
  ev.report.n_test = parts.test.size();
  ev.report.r = scored.correlation.r;
  ev.report.p = scored.correlation.p_two_sided;
  ev.report.fingerprint = evaluation_fingerprint(spec, forest, split_spec, min_length);
  ev.report.timestamp = utc_timestamp();
  ev.predictions = std::move(scored.rows);
  for (const auto& r : parts.train.records) ev.train_ids.push_back(r.id);
  for (const auto& r : parts.test.records) ev.test_ids.push_back(r.id);
  return ev;
}

// ---------------------------------------------------------------------------

std::uint64_t grid_split_seed(std::uint64_t master, std::size_t min_length) {
  return derive_seed(master, "split:" + std::to_string(min_length));
}

FeaturizerSpec seeded_spec(FeaturizerSpec spec, std::uint64_t seed) {
  spec.lda.seed = derive_seed(seed, "lda");
  spec.doc2vec.seed = derive_seed(seed, "doc2vec");
  return spec;
}

std::optional<std::size_t> GridResult::best() const {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i].result) continue;
    if (!best || cells[i].result->report.r > cells[*best].result->report.r) best = i;
  }
  return best;
}

GridResult run_grid(const Corpus& corpus, const GridSpec& spec, const FeaturizerResources& resources,
                    std::size_t threads) {
  GridResult grid;
  for (const auto& f : spec.featurizers) {
    for (std::size_t len : spec.min_lengths) grid.cells.push_back({f.kind, len, std::nullopt, {}});
  }
  const std::size_t n_lengths = spec.min_lengths.size();
  parallel_for(grid.cells.size(), threads, [&](std::size_t i) {
    GridCell& cell = grid.cells[i];
    const auto& fspec = spec.featurizers[i / n_lengths];
    const std::uint64_t cell_seed =
        derive_seed(spec.seed, std::string(to_string(cell.kind)) + ":" + std::to_string(cell.min_length));
    ForestConfig forest = spec.forest;
    forest.seed = derive_seed(cell_seed, "forest");
    const SplitSpec split_spec{spec.train_fraction, grid_split_seed(spec.seed, cell.min_length)};
    try {
      cell.result = evaluate(seeded_spec(fspec, cell_seed), resources, forest, corpus, split_spec, cell.min_length);
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  });
  return grid;
}

void write_grid_csv(const GridResult& grid, std::ostream& out) {
  out << "featurizer,min_length,r,p,n\n";
  for (const auto& c : grid.cells) {
    out << to_string(c.kind) << ',' << c.min_length << ',';
    if (c.result) {
      out << csv::format_double(c.result->report.r) << ',' << csv::format_double(c.result->report.p) << ','
          << c.result->report.n_test;
    } else {
      out << ",,";
    }
    out << '\n';
  }
}

std::string grid_table(const GridResult& grid) {
  std::vector<std::string> kinds;
  std::vector<std::size_t> lengths;
  for (const auto& c : grid.cells) {
    const std::string k(to_string(c.kind));
    if (std::find(kinds.begin(), kinds.end(), k) == kinds.end()) kinds.push_back(k);
    if (std::find(lengths.begin(), lengths.end(), c.min_length) == lengths.end()) lengths.push_back(c.min_length);
  }
  const auto best = grid.best();
  std::ostringstream out;
  out << std::left << std::setw(12) << "featurizer";
  for (auto len : lengths) out << std::right << std::setw(12) << ("min " + std::to_string(len));
  out << '\n';
  for (const auto& k : kinds) {
    out << std::left << std::setw(12) << k;
    for (auto len : lengths) {
      std::string cell = "-";
      for (std::size_t i = 0; i < grid.cells.size(); ++i) {
        const auto& c = grid.cells[i];
        if (to_string(c.kind) != k || c.min_length != len) continue;
        if (!c.result) {
          cell = "failed";
        } else {
          std::ostringstream v;
          v << std::fixed << std::setprecision(3) << c.result->report.r;
          cell = best && *best == i ? "[" + v.str() + "]" : v.str();
        }
      }
      out << std::right << std::setw(12) << cell;
    }
    out << '\n';
  }
  if (best) {
    const auto& c = grid.cells[*best];
    out << "\nbest: " << to_string(c.kind) << " at min_length " << c.min_length << " (r = " << std::fixed
        << std::setprecision(3) << c.result->report.r << ", n = " << c.result->report.n_test << ")\n";
  }
  for (const auto& c : grid.cells) {
    if (!c.result) out << "failed: " << to_string(c.kind) << " at min_length " << c.min_length << ": " << c.error << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------

namespace {

CorrelateRow correlate_row(std::string name, std::span<const double> predictions,
                           const std::vector<std::optional<double>>& metric) {
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < metric.size(); ++i) {
    if (!metric[i]) continue;
    x.push_back(predictions[i]);
    y.push_back(*metric[i]);
  }
  CorrelateRow row{std::move(name), std::nullopt, {}};
  if (x.size() < 3) {
    row.note = "fewer than 3 records";
    return row;
  }
  try {
    row.result = pearson(x, y);
  } catch (const DataError&) {
    row.note = "constant series";
  }
  return row;
}

}  // namespace

std::vector<CorrelateRow> correlate_outputs(std::span<const double> predictions, const Corpus& corpus,
                                            const CorrelateOptions& options) {
  if (predictions.size() != corpus.size()) {
    throw UsageError("got " + std::to_string(predictions.size()) + " predictions for " +
                     std::to_string(corpus.size()) + " records");
  }
  const std::size_t n = corpus.size();
  std::vector<std::optional<double>> length(n), sent(n), formal(n), cli(n), difficult(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& text = corpus.records[i].text;
    const auto tokens = tokenize(text);
    length[i] = static_cast<double>(tokens.size());
    sent[i] = static_cast<double>(sentences(text).size());
    if (!tokens.empty()) {
      formal[i] = fscore(tokens, options.pos);
      cli[i] = coleman_liau(text);
    }
    if (options.easy_words) difficult[i] = static_cast<double>(difficult_words(tokens, *options.easy_words));
  }
  std::vector<CorrelateRow> rows;
  rows.push_back(correlate_row("length", predictions, length));
  rows.push_back(correlate_row("sentences", predictions, sent));
  rows.push_back(correlate_row("fscore", predictions, formal));
  rows.push_back(correlate_row("coleman_liau", predictions, cli));
  if (options.easy_words) rows.push_back(correlate_row("difficult_words", predictions, difficult));

  std::set<std::string> extra_names;
  for (const auto& r : corpus.records) {
    for (const auto& [k, v] : r.extra) extra_names.insert(k);
  }
  for (const auto& name : extra_names) {
    std::vector<std::optional<double>> col(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& extra = corpus.records[i].extra;
      if (auto it = extra.find(name); it != extra.end()) col[i] = it->second;
    }
    rows.push_back(correlate_row(name, predictions, col));
  }
  return rows;
}

void write_correlates_csv(std::span<const CorrelateRow> rows, std::ostream& out) {
  out << "metric,r,p,n,note\n";
  for (const auto& row : rows) {
    out << csv::escape(row.metric) << ',';
    if (row.result) {
      out << csv::format_double(row.result->r) << ',' << csv::format_double(row.result->p_two_sided) << ','
          << row.result->n;
    } else {
      out << ",,";
    }
    out << ',' << csv::escape(row.note) << '\n';
  }
}

GroupAttribute parse_group_attribute(std::string_view s) {
  if (s == "gender") return GroupAttribute::gender;
  if (s == "job_family") return GroupAttribute::job_family;
  throw UsageError("group attribute must be gender or job_family, got '" + std::string(s) + "'");
}

GroupReport group_report(std::span<const double> predictions, const Corpus& corpus, GroupAttribute attribute) {
  if (predictions.size() != corpus.size()) {
    throw UsageError("got " + std::to_string(predictions.size()) + " predictions for " +
                     std::to_string(corpus.size()) + " records");
  }
  GroupReport report;
  report.attribute = attribute;
  // Ordered map keeps group order deterministic; "unspecified" always last.
  std::map<std::string, std::vector<double>> members;
  std::vector<double> unspecified;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& r = corpus.records[i];
    std::string label = attribute == GroupAttribute::gender ? std::string(to_string(r.gender)) : r.job_family;
    if (label.empty() || label == "unspecified") {
      unspecified.push_back(predictions[i]);
    } else {
      members[label].push_back(predictions[i]);
    }
  }
  for (const auto& [label, values] : members) report.groups.push_back({label, values.size(), mean(values)});
  if (!unspecified.empty()) report.groups.push_back({"unspecified", unspecified.size(), mean(unspecified)});

  if (attribute == GroupAttribute::gender) {
    const auto& f = members["female"];
    const auto& m = members["male"];
    if (f.size() < 2 || m.size() < 2) {
      report.notes.push_back("Cohen's d needs at least 2 female and 2 male records");
    } else {
      try {
        report.cohens_d = cohens_d(f, m);
      } catch (const DataError&) {
        if (mean(f) == mean(m)) {
          report.cohens_d = 0.0;
          report.notes.push_back("both groups constant and equal; d reported as 0");
        } else {
          report.notes.push_back("zero pooled variance; d undefined");
        }
      }
    }
  } else {
    std::vector<std::vector<double>> groups;
    for (const auto& [label, values] : members) {
      if (values.size() >= 2) {
        groups.push_back(values);
      } else {
        report.notes.push_back("job family '" + label + "' has fewer than 2 records; excluded from ANOVA");
      }
    }
    if (groups.size() < 2) {
      report.notes.push_back("ANOVA needs at least 2 job families with 2 or more records");
    } else {
      try {
        report.anova = anova_f(groups);
      } catch (const DataError& e) {
        report.notes.push_back(std::string("ANOVA undefined: ") + e.what());
      }
    }
  }
  return report;
}

void write_group_csv(const GroupReport& report, std::ostream& out) {
  out << "group,count,mean\n";
  for (const auto& g : report.groups) {
    out << csv::escape(g.label) << ',' << g.count << ',' << csv::format_double(g.mean) << '\n';
  }
}

}  // namespace textrait
