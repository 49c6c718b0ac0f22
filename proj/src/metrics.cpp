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

#include "textrait/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>

#include "textrait/error.hpp"
#include "textrait/text.hpp"

namespace textrait {

// ---------------------------------------------------------------------------
// Distributions
// ---------------------------------------------------------------------------

namespace {

// Continued fraction for I_x(a, b), valid for x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  constexpr int kMaxIter = 10000;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw InvariantError("incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw UsageError("incomplete beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw UsageError("incomplete beta needs x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw UsageError("t distribution needs df > 0");
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return std::clamp(regularized_incomplete_beta(0.5 * df, 0.5, x), 0.0, 1.0);
}

double f_survival(double f, double d1, double d2) {
  if (!(d1 > 0.0) || !(d2 > 0.0)) throw UsageError("F distribution needs positive df");
  if (f <= 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  const double x = d2 / (d2 + d1 * f);
  return std::clamp(regularized_incomplete_beta(0.5 * d2, 0.5 * d1, x), 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Correlation and group statistics
// ---------------------------------------------------------------------------

double mean(std::span<const double> x) {
  if (x.empty()) throw UsageError("mean of an empty series");
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
  if (x.size() < 2) throw UsageError("sample variance needs at least 2 values");
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw UsageError("pearson: series lengths differ (" + std::to_string(x.size()) + " vs " +
                     std::to_string(y.size()) + ")");
  }
  const std::size_t n = x.size();
  if (n < 3) throw UsageError("pearson: need at least 3 pairs, got " + std::to_string(n));
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DataError("pearson: correlation undefined for a constant series");

  CorrelationResult out;
  out.n = n;
  out.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = static_cast<double>(n - 2);
  const double one_minus = 1.0 - out.r * out.r;
  if (one_minus <= 0.0) {
    out.p_two_sided = 0.0;
  } else {
    out.p_two_sided = student_t_two_sided_p(out.r * std::sqrt(df / one_minus), df);
  }
  return out;
}

double cohens_d(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw UsageError("cohens_d: each group needs >= 2 values");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double pooled =
      ((na - 1.0) * sample_variance(a) + (nb - 1.0) * sample_variance(b)) / (na + nb - 2.0);
  if (pooled <= 0.0) throw DataError("cohens_d: pooled variance is zero");
  return (mean(a) - mean(b)) / std::sqrt(pooled);
}

AnovaResult anova_f(std::span<const std::vector<double>> groups) {
  if (groups.size() < 2) throw UsageError("anova: need at least 2 groups");
  std::size_t n_total = 0;
  double grand_sum = 0.0;
  for (const auto& g : groups) {
    if (g.size() < 2) throw UsageError("anova: every group needs >= 2 values");
    n_total += g.size();
    for (double v : g) grand_sum += v;
  }
  const double grand_mean = grand_sum / static_cast<double>(n_total);
  double ss_between = 0.0, ss_within = 0.0;
  for (const auto& g : groups) {
    const double m = mean(g);
    ss_between += static_cast<double>(g.size()) * (m - grand_mean) * (m - grand_mean);
    for (double v : g) ss_within += (v - m) * (v - m);
  }
  if (ss_within <= 0.0) throw DataError("anova: within-group variance is zero in all groups");

  AnovaResult out;
  out.df_between = groups.size() - 1;
  out.df_within = n_total - groups.size();
  out.f = (ss_between / static_cast<double>(out.df_between)) /
          (ss_within / static_cast<double>(out.df_within));
  out.p = f_survival(out.f, static_cast<double>(out.df_between), static_cast<double>(out.df_within));
  return out;
}

// ---------------------------------------------------------------------------
// Language measures
// ---------------------------------------------------------------------------

namespace {

constexpr std::array<std::pair<PosTag, std::string_view>, 9> kTagNames{{
    {PosTag::noun, "noun"},
    {PosTag::verb, "verb"},
    {PosTag::adjective, "adjective"},
    {PosTag::adverb, "adverb"},
    {PosTag::pronoun, "pronoun"},
    {PosTag::article, "article"},
    {PosTag::preposition, "preposition"},
    {PosTag::conjunction, "conjunction"},
    {PosTag::interjection, "interjection"},
}};

struct WordList {
  PosTag tag;
  std::string_view words;  // space separated
};

// Closed classes first; the last three lists are frequent open-class words
// that the suffix rules would otherwise default to nouns.
constexpr WordList kBuiltinLists[] = {
    {PosTag::pronoun,
     "i me my mine myself you your yours yourself yourselves he him his himself she her hers "
     "herself it its itself we us our ours ourselves they them their theirs themselves this "
     "these those who whom whose which what whoever whatever anyone someone everyone nobody "
     "anybody somebody everybody something anything nothing everything i'm i've i'd i'll you're "
     "you've you'd you'll he's she's it's we're we've we'd we'll they're they've they'd they'll"},
    {PosTag::article, "a an the"},
    {PosTag::preposition,
     "about above across after against along among around at before behind below beneath "
     "beside besides between beyond by despite down during except for from in inside into near "
     "of off on onto out outside over past since through throughout till to toward towards "
     "under underneath until unlike up upon via with within without"},
    {PosTag::conjunction,
     "and but or nor so yet because although though while whereas if unless that whether than "
     "as both either neither"},
    {PosTag::interjection, "oh ah wow hey hi hello yeah yes ok okay oops hmm um uh alas ouch"},
    {PosTag::verb,
     "am is are was were be been being have has had having do does did doing will would shall "
     "should can could may might must don't doesn't didn't isn't aren't wasn't weren't can't "
     "couldn't won't wouldn't shouldn't haven't hasn't hadn't get gets got make makes made go "
     "goes went gone take takes took taken know knows knew known think thinks thought want "
     "wants like likes say says said see sees saw seen come comes came give gives gave given "
     "find finds found tell tells told feel feels felt become becomes became keep keeps kept "
     "help helps use uses try tries need needs let put"},
    {PosTag::adverb,
     "not very also just always never often sometimes usually really too quite here there now "
     "then again still already even ever soon almost perhaps maybe rather"},
    {PosTag::adjective,
     "good bad new old great big small high low long short important different best better "
     "worse worst able happy sure own other same few many much more most"},
};

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

PosTag suffix_tag(std::string_view w) {
  if (w.size() >= 5 && ends_with(w, "ly")) return PosTag::adverb;
  if (w.size() >= 6 && ends_with(w, "ing")) return PosTag::verb;  // stem of >= 3 letters
  if (w.size() >= 5 && ends_with(w, "ed")) return PosTag::verb;
  for (std::string_view s : {"ous", "ful", "able", "ible", "ive", "less", "ical", "ish"}) {
    if (w.size() >= s.size() + 3 && ends_with(w, s)) return PosTag::adjective;
  }
  return PosTag::noun;
}

std::string lowercase(std::string_view s) {
  auto tokens = tokenize(s);
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace

std::string_view to_string(PosTag tag) {
  for (auto [t, name] : kTagNames) {
    if (t == tag) return name;
  }
  return "noun";
}

PosTag parse_pos_tag(std::string_view s) {
  for (auto [t, name] : kTagNames) {
    if (name == s) return t;
  }
  throw DataError("unknown part-of-speech tag '" + std::string(s) + "'");
}

PosLexicon PosLexicon::builtin() {
  PosLexicon lex;
  for (const auto& list : kBuiltinLists) {
    std::string_view rest = list.words;
    while (!rest.empty()) {
      const auto space = rest.find(' ');
      const auto word = rest.substr(0, space);
      if (!word.empty() && !lex.words_.emplace(std::string(word), list.tag).second) {
        throw InvariantError("builtin POS lists overlap on '" + std::string(word) + "'");
      }
      if (space == std::string_view::npos) break;
      rest.remove_prefix(space + 1);
    }
  }
  return lex;
}

PosLexicon PosLexicon::with_overrides(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open POS lexicon " + path.string());
  PosLexicon lex = builtin();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected word<TAB>tag");
    }
    try {
      lex.overrides_[lowercase(line.substr(0, tab))] = parse_pos_tag(line.substr(tab + 1));
    } catch (const DataError& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return lex;
}

PosTag PosLexicon::tag(std::string_view token) const {
  const std::string key(token);
  if (auto it = overrides_.find(key); it != overrides_.end()) return it->second;
  if (auto it = words_.find(key); it != words_.end()) return it->second;
  return suffix_tag(token);
}

double fscore(std::span<const std::string> tokens, const PosLexicon& pos) {
  if (tokens.empty()) throw UsageError("fscore: empty token stream");
  std::array<std::size_t, kTagNames.size()> counts{};
  for (const auto& t : tokens) ++counts[static_cast<std::size_t>(pos.tag(t))];
  const double n = static_cast<double>(tokens.size());
  auto pct = [&](PosTag tag) { return 100.0 * static_cast<double>(counts[static_cast<std::size_t>(tag)]) / n; };
  const double positive = pct(PosTag::noun) + pct(PosTag::adjective) + pct(PosTag::preposition) +
                          pct(PosTag::article);
  const double negative = pct(PosTag::pronoun) + pct(PosTag::verb) + pct(PosTag::adverb) +
                          pct(PosTag::interjection);
  return (positive - negative + 100.0) / 2.0;
}

double coleman_liau(std::string_view text) {
  const std::size_t words = word_count(text);
  if (words == 0) throw UsageError("coleman_liau: text has no words");
  const double per100 = 100.0 / static_cast<double>(words);
  const double letters = static_cast<double>(letter_count(text)) * per100;
  const double sents = static_cast<double>(sentences(text).size()) * per100;
  return 0.0588 * letters - 0.296 * sents - 15.8;
}

WordSet load_word_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open word list " + path.string());
  WordSet out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string w = lowercase(line);
    if (!w.empty()) out.insert(w);
  }
  return out;
}

std::size_t difficult_words(std::span<const std::string> tokens, const WordSet& easy_words) {
  std::unordered_set<std::string_view> seen;
  for (const auto& t : tokens) {
    if (easy_words.contains(t) || letter_count(t) == 0) continue;
    seen.insert(t);
  }
  return seen.size();
}

}  // namespace textrait
