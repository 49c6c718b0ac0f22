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

#include <fstream>

#include "doctest.h"
#include "textrait/error.hpp"
#include "textrait/text.hpp"

using namespace textrait;

TEST_SUITE("text") {

TEST_CASE("tokenizer lowercases and splits on punctuation") {
  CHECK(tokenize("Hello, World! It's 2024.") == TokenStream{"hello", "world", "it's", "2024"});
  CHECK(tokenize("  ") .empty());
  CHECK(tokenize("rock'n'roll don’t 'quoted'") == TokenStream{"rock'n'roll", "don't", "quoted"});
  CHECK(tokenize("Ünïcode café") == TokenStream{"ünïcode", "café"});
}

TEST_CASE("word and letter counts agree with the tokenizer") {
  const std::string text = "This is a test. Another one!";
  CHECK(word_count(text) == tokenize(text).size());
  CHECK(letter_count("This is a test.") == 11);
}

TEST_CASE("sentence segmentation") {
  CHECK(sentences("One. Two!  Three?") == std::vector<std::string>{"One.", "Two!", "Three?"});
  CHECK(sentences("No terminator") == std::vector<std::string>{"No terminator"});
  CHECK(sentences("3.14 is pi... ok") == std::vector<std::string>{"3.14 is pi...", "ok"});
  CHECK(sentences("... !!").empty());
}

TEST_CASE("ngrams are grouped by order") {
  const TokenStream t{"a", "b", "c"};
  CHECK(ngrams(t, OrderSet{1, 2}) == std::vector<std::string>{"a", "b", "c", "a b", "b c"});
  CHECK(ngrams(t, OrderSet{3}) == std::vector<std::string>{"a b c"});
  CHECK(ngrams(TokenStream{"a"}, OrderSet{2, 3}).empty());
  CHECK_THROWS_AS(OrderSet({4}), UsageError);
}

TEST_CASE("vocabulary ranks by count then bytes") {
  const std::vector<TokenStream> docs{{"b", "a", "b"}, {"c", "a"}};
  VocabularyOptions opt;
  opt.top_k = 3;
  opt.orders = OrderSet{1};
  const Vocabulary v = build_vocabulary(docs, opt);
  REQUIRE(v.size() == 3);
  // a and b both occur twice; a wins the tie.
  CHECK(v[0].ngram == "a");
  CHECK(v[1].ngram == "b");
  CHECK(v[1].total_count == 2);
  CHECK(v[1].document_frequency == 1);
  CHECK(v[2].ngram == "c");
  CHECK(v.find("c") == 2u);
  CHECK_FALSE(v.find("z").has_value());
}

TEST_CASE("document-frequency selection") {
  const std::vector<TokenStream> docs{{"x", "x", "x"}, {"y"}, {"y"}};
  VocabularyOptions opt;
  opt.top_k = 1;
  opt.orders = OrderSet{1};
  opt.selection = VocabSelection::document_frequency;
  CHECK(build_vocabulary(docs, opt)[0].ngram == "y");
  opt.selection = VocabSelection::term_frequency;
  CHECK(build_vocabulary(docs, opt)[0].ngram == "x");
}

TEST_CASE("empty inputs are usage errors") {
  VocabularyOptions opt;
  CHECK_THROWS_AS(build_vocabulary(std::vector<TokenStream>{}, opt), UsageError);
  opt.top_k = 0;
  CHECK_THROWS_AS(build_vocabulary(std::vector<TokenStream>{{"a"}}, opt), UsageError);
}

TEST_CASE("stopword file and removal") {
  const auto path = std::filesystem::temp_directory_path() / "textrait_stop.txt";
  {
    std::ofstream out(path);
    out << "# comment\nThe\n\nand\n";
  }
  const StopwordSet s = load_stopwords(path);
  CHECK(s.size() == 2);
  CHECK(remove_stopwords({"the", "cat", "and", "dog"}, s) == TokenStream{"cat", "dog"});
  std::filesystem::remove(path);
}

}  // TEST_SUITE
