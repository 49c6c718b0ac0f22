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

#pragma once

// Experiment protocol: length filter, train/test split, fit on the training
// side, score the held-out side by Pearson r. Also the grid over
// representations and minimum lengths, and the post-hoc analyses of
// predicted scores (language correlates, demographic groups).

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "textrait/corpus.hpp"
#include "textrait/featurizer.hpp"
#include "textrait/forest.hpp"
#include "textrait/metrics.hpp"

namespace textrait {

struct EvalReport {
  std::string featurizer;
  std::string parameters;  // canonical JSON of the featurizer spec
  std::string forest;      // canonical JSON of the forest config
  std::string split;       // canonical JSON of the split spec
  std::size_t min_length = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  double r = 0.0;
  double p = 1.0;
  std::string fingerprint;
  std::string timestamp;  // ISO 8601 UTC; the only nondeterministic field

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

// Hash of everything that determines an evaluation: featurizer parameters
// (seeds included), forest config, split spec and min_length.
std::string evaluation_fingerprint(const FeaturizerSpec& spec, const ForestConfig& forest, const SplitSpec& split,
                                   std::size_t min_length);

// Stable JSON rendering; `with_timestamp = false` gives the comparable part.
std::string to_json_string(const EvalReport& report, bool with_timestamp = true);
std::string utc_timestamp();

struct Prediction {
  std::string id;
  double actual = 0.0;
  double predicted = 0.0;
};

struct TrainedPipeline {
  Featurizer featurizer;
  Forest forest;
};

// Fits the representation and the forest on `train` only.
TrainedPipeline train_pipeline(const FeaturizerSpec& spec, const FeaturizerResources& resources,
                               const ForestConfig& forest, const Corpus& train, std::size_t threads = 1);

// Never reads targets.
std::vector<double> predict(const TrainedPipeline& pipeline, const Corpus& corpus, std::size_t threads = 1);

// Pearson r of actual against predicted, with per-record rows.
struct Scored {
  CorrelationResult correlation;
  std::vector<Prediction> rows;
};
Scored score(const Corpus& corpus, std::span<const double> predicted);

struct Evaluation {
  EvalReport report;
  std::vector<Prediction> predictions;
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
};

// filter(min_length) -> split -> train_pipeline(train) -> predict(test) ->
// pearson. Throws DataError when fewer than 3 test records remain.
Evaluation evaluate(const FeaturizerSpec& spec, const FeaturizerResources& resources, const ForestConfig& forest,
                    const Corpus& corpus, const SplitSpec& split_spec, std::size_t min_length,
                    std::size_t threads = 1);

// ---------------------------------------------------------------------------
// Grid
// ---------------------------------------------------------------------------

struct GridSpec {
  std::vector<FeaturizerSpec> featurizers;
  std::vector<std::size_t> min_lengths{50, 100, 150, 200};
  ForestConfig forest;
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
};

// Seeds used by the cell (kind, min_length): the split seed depends only on
// min_length, so every representation sees the same partition.
std::uint64_t grid_split_seed(std::uint64_t master, std::size_t min_length);
FeaturizerSpec seeded_spec(FeaturizerSpec spec, std::uint64_t seed);

struct GridCell {
  FeaturizerKind kind = FeaturizerKind::tfidf;
  std::size_t min_length = 0;
  std::optional<Evaluation> result;
  std::string error;  // set when result is empty
};

struct GridResult {
  std::vector<GridCell> cells;  // featurizer-major, in spec order
  // Index of the successful cell with the largest r; first one on ties.
  std::optional<std::size_t> best() const;
};

// Cells run on up to `threads` workers; a failing cell is recorded, never
// rethrown.
GridResult run_grid(const Corpus& corpus, const GridSpec& spec, const FeaturizerResources& resources,
                    std::size_t threads = 1);

// `featurizer,min_length,r,p,n`; failed cells have empty r, p, n.
void write_grid_csv(const GridResult& grid, std::ostream& out);
// Featurizers as rows, min_lengths as columns; the best cell is wrapped in
// brackets and named below the table.
std::string grid_table(const GridResult& grid);

// ---------------------------------------------------------------------------
// Correlates of predicted scores
// ---------------------------------------------------------------------------

struct CorrelateOptions {
  PosLexicon pos = PosLexicon::builtin();
  std::optional<WordSet> easy_words;  // difficult_words row only when present
};

struct CorrelateRow {
  std::string metric;
  std::optional<CorrelationResult> result;
  std::string note;  // reason when skipped
};

// Rows: length, sentences, fscore, coleman_liau, difficult_words (with an
// easy list), then each extra column in name order. Records where a metric
// is undefined are left out of that row. Constant series are skipped with
// a note rather than failing.
std::vector<CorrelateRow> correlate_outputs(std::span<const double> predictions, const Corpus& corpus,
                                            const CorrelateOptions& options);
void write_correlates_csv(std::span<const CorrelateRow> rows, std::ostream& out);

// ---------------------------------------------------------------------------
// Demographic groups
// ---------------------------------------------------------------------------

enum class GroupAttribute { gender, job_family };
GroupAttribute parse_group_attribute(std::string_view s);

struct GroupStat {
  std::string label;
  std::size_t count = 0;
  double mean = 0.0;
};

struct GroupReport {
  GroupAttribute attribute = GroupAttribute::gender;
  std::vector<GroupStat> groups;
  std::optional<double> cohens_d;   // gender: female vs male
  std::optional<AnovaResult> anova;  // job_family
  std::vector<std::string> notes;
};

// Per-group count and mean. Gender: Cohen's d between female and male
// (unspecified reported but excluded). Job family: one-way ANOVA across
// families with at least 2 members; records without a family are reported
// as "unspecified" and excluded.
GroupReport group_report(std::span<const double> predictions, const Corpus& corpus, GroupAttribute attribute);
void write_group_csv(const GroupReport& report, std::ostream& out);

}  // namespace textrait
