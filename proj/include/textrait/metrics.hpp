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

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace textrait {

// ---------------------------------------------------------------------------
// Distributions
// ---------------------------------------------------------------------------

// I_x(a, b), evaluated with a modified-Lentz continued fraction. Absolute
// error below 1e-12 for a, b in the ranges produced by t and F tests.
double regularized_incomplete_beta(double a, double b, double x);

// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double student_t_two_sided_p(double t, double df);

// P(F' >= f) for the F distribution with (d1, d2) degrees of freedom.
double f_survival(double f, double d1, double d2);

// ---------------------------------------------------------------------------
// Correlation and group statistics
// ---------------------------------------------------------------------------

struct CorrelationResult {
  double r = 0.0;
  double p_two_sided = 1.0;
  std::size_t n = 0;
};

// Sample Pearson correlation with a two-sided t-test p-value. Throws
// UsageError on length mismatch or n < 3, DataError when either series is
// constant (r is undefined).
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

double mean(std::span<const double> x);
// Unbiased (n - 1) sample variance.
double sample_variance(std::span<const double> x);

// (mean(a) - mean(b)) / pooled standard deviation, pooled with n - 1
// weights. Throws UsageError for groups smaller than 2 and DataError when
// the pooled variance is zero.
double cohens_d(std::span<const double> a, std::span<const double> b);

struct AnovaResult {
  double f = 0.0;
  std::size_t df_between = 0;
  std::size_t df_within = 0;
  double p = 1.0;
};

// One-way ANOVA across >= 2 groups of >= 2 values each. Throws DataError when
// every group has zero within-group variance.
AnovaResult anova_f(std::span<const std::vector<double>> groups);

// ---------------------------------------------------------------------------
// Language measures
// ---------------------------------------------------------------------------

enum class PosTag {
  noun,
  verb,
  adjective,
  adverb,
  pronoun,
  article,
  preposition,
  conjunction,
  interjection,
};

std::string_view to_string(PosTag tag);
PosTag parse_pos_tag(std::string_view s);

// Approximate part-of-speech tagger for the formality score. Lookup order:
// user overrides, closed-class word lists, suffix rules, then noun.
class PosLexicon {
 public:
  // Closed-class lists (pronouns, articles, prepositions, conjunctions,
  // interjections, auxiliary verbs) plus a short list of very common
  // open-class words whose suffixes are uninformative.
  static PosLexicon builtin();

  // Builtin lists overridden by a `word<TAB>tag` file.
  static PosLexicon with_overrides(const std::filesystem::path& path);

  PosTag tag(std::string_view token) const;

  // Word lists per tag, for inspection.
  const std::unordered_map<std::string, PosTag>& words() const { return words_; }
  const std::unordered_map<std::string, PosTag>& overrides() const { return overrides_; }

 private:
  std::unordered_map<std::string, PosTag> words_;
  std::unordered_map<std::string, PosTag> overrides_;
};

// Formality score:
//   F = (noun% + adjective% + preposition% + article%
//        - pronoun% - verb% - adverb% - interjection% + 100) / 2
// over the tagged tokens. Throws UsageError for an empty stream.
double fscore(std::span<const std::string> tokens, const PosLexicon& pos);

// Coleman-Liau index 0.0588 L - 0.296 S - 15.8, with L letters and S
// sentences per 100 words. Throws UsageError for text without words.
double coleman_liau(std::string_view text);

using WordSet = std::unordered_set<std::string>;

// One entry per line, lowercased; blank lines and '#' comments ignored.
WordSet load_word_list(const std::filesystem::path& path);

// Unique token types that contain a letter and are not in the easy list.
std::size_t difficult_words(std::span<const std::string> tokens, const WordSet& easy_words);

}  // namespace textrait
