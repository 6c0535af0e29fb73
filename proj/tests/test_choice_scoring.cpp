// Copyright 2026 The lmprobe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "lmprobe/choice_scoring.hpp"
#include "lmprobe/error.hpp"
#include "lmprobe/mocks.hpp"
#include "lmprobe/rng.hpp"
#include "oracle.hpp"

using namespace lmprobe;
using namespace lmprobe::testing;

TEST_CASE("select_choice takes the argmax with lowest-index ties") {
  std::vector<ChoiceScore> scores = {{0, -1.0, ScoringMode::kMasked, 1},
                                     {1, -2.0, ScoringMode::kMasked, 1}};
  CHECK(select_choice(scores) == 0);
  scores[1].logprob = -1.0;
  CHECK(select_choice(scores) == 0);  // tie rule
  scores[1].logprob = -0.5;
  CHECK(select_choice(scores) == 1);
}

TEST_CASE("select_choice is order-free for distinct scores") {
  Rng rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const size_t n = 2 + rng.bounded(4);
    std::vector<ChoiceScore> scores;
    for (size_t i = 0; i < n; ++i)
      scores.push_back({static_cast<int>(i),
                        -static_cast<double>(rng.bounded(1000000)) / 1000.0 -
                            static_cast<double>(i) * 1e-9,
                        ScoringMode::kMasked, 1});
    const int expected = select_choice(scores);
    rng.shuffle(scores);
    CHECK(select_choice(scores) == expected);
  }
}

TEST_CASE("select_choice rejects duplicate or missing indices") {
  std::vector<ChoiceScore> dup = {{0, -1.0, ScoringMode::kMasked, 1},
                                  {0, -2.0, ScoringMode::kMasked, 1}};
  CHECK_THROWS_AS(select_choice(dup), Error);
  std::vector<ChoiceScore> empty;
  CHECK_THROWS_AS(select_choice(empty), Error);
}

TEST_CASE("score_masked on the age item picks the table argmax") {
  TabularUnigramMock mock("t", {{"younger", 0.6}, {"older", 0.4}});
  const ProbeQuestion q = make_question(
      "A 41 year old person age is [MASK] than a 42 year old person.",
      {"younger", "older"}, 0);
  const auto scores = score_masked(q, mock);
  CHECK(select_choice(scores) == 0);  // gold
  CHECK(scores[0].logprob == doctest::Approx(std::log(0.6)));
  CHECK(scores[0].n_tokens == 1);
}

TEST_CASE("score_masked ties under a uniform mock resolve to index 0") {
  UniformMock mock("u", {"younger", "older"});
  const ProbeQuestion q =
      make_question("x [MASK] y", {"younger", "older"}, 1);
  const auto scores = score_masked(q, mock);
  CHECK(scores[0].logprob == scores[1].logprob);
  CHECK(select_choice(scores) == 0);
}

TEST_CASE("score_masked rejects multi-token choices naming the choice") {
  TabularUnigramMock mock("t", {{"ice", 0.5}, {"cream", 0.3}, {"x", 0.2}});
  const ProbeQuestion q =
      make_question("I like [MASK]", {"ice cream", "x"}, 0);
  try {
    score_masked(q, mock);
    FAIL("expected single-token violation");
  } catch (const Error& e) {
    CHECK(e.code() == StatusCode::kValidation);
    CHECK(std::string(e.what()).find("ice cream") != std::string::npos);
  }
}

TEST_CASE("score_causal gap equals the unigram log ratio") {
  TabularUnigramMock mock("t", {{"younger", 0.2},
                                {"older", 0.1},
                                {"pad", 0.7}});
  const ProbeQuestion q =
      make_question("pad [MASK] pad", {"younger", "older"}, 0);
  const auto scores = score_causal(q, mock);
  CHECK(select_choice(scores) == 0);
  CHECK(scores[0].logprob - scores[1].logprob ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(scores[0].n_tokens == 3);  // whole rendered sentence
}

TEST_CASE("degenerate rendering ties resolve to index 0") {
  // both choices are out-of-vocabulary and collapse to <unk>
  TabularUnigramMock mock("t", {{"pad", 1.0}});
  const ProbeQuestion q = make_question("pad [MASK]", {"qqq", "zzz"}, 1);
  const auto scores = score_causal(q, mock);
  CHECK(scores[0].logprob == scores[1].logprob);
  CHECK(select_choice(scores) == 0);
}

TEST_CASE("score_infill matches score_masked rankings on shared tables") {
  TabularUnigramMock mock(
      "t", {{"a", 0.5}, {"b", 0.3}, {"c", 0.15}, {"pad", 0.05}});
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> choices = {"a", "b", "c"};
    rng.shuffle(choices);
    const ProbeQuestion q = make_question("pad [MASK] pad", choices, 0);
    const auto masked = score_masked(q, mock);
    const auto infill = score_infill(q, mock);
    // identical rankings, not only identical argmax
    std::vector<int> order_m(choices.size()), order_i(choices.size());
    for (size_t i = 0; i < choices.size(); ++i)
      order_m[i] = order_i[i] = static_cast<int>(i);
    std::sort(order_m.begin(), order_m.end(), [&](int x, int y) {
      return masked[x].logprob > masked[y].logprob;
    });
    std::sort(order_i.begin(), order_i.end(), [&](int x, int y) {
      return infill[x].logprob > infill[y].logprob;
    });
    CHECK(order_m == order_i);
  }
}

TEST_CASE("score_infill multi-token product matches brute force") {
  ScriptedMock mock("s");
  mock.add_vocab({"p", "q", "r", "ctx"});
  const std::string stem = "ctx [MASK]";
  mock.script_infill(stem, "p q", {0.5, 0.4});   // log 0.2
  mock.script_infill(stem, "q", {0.3});          // log 0.3
  mock.script_infill(stem, "r p", {0.9, 0.1});   // log 0.09
  const ProbeQuestion q = make_question(stem, {"p q", "q", "r p"}, 0);
  const auto scores = score_infill(q, mock);
  CHECK(scores[0].logprob == doctest::Approx(std::log(0.2)));
  CHECK(scores[1].logprob == doctest::Approx(std::log(0.3)));
  CHECK(scores[2].logprob == doctest::Approx(std::log(0.09)));
  CHECK(select_choice(scores) == 1);  // brute-force product argmax
  CHECK(scores[0].n_tokens == 2);
}

TEST_CASE("score_fullseq sums the candidate span") {
  ScriptedMock mock("s");
  mock.add_vocab({"a", "b", "c", "d"});
  mock.script_fullseq("a [MASK] d", "a b d", {-0.1, -0.5, -0.3});
  mock.script_fullseq("a [MASK] d", "a c d", {-0.1, -0.9, -0.3});
  const ProbeQuestion q = make_question("a [MASK] d", {"b", "c"}, 0);
  const auto scores = score_fullseq(q, mock);
  CHECK(scores[0].logprob == doctest::Approx(-0.5));
  CHECK(scores[1].logprob == doctest::Approx(-0.9));
  CHECK(select_choice(scores) == 0);
}

TEST_CASE("score_fullseq span extraction survives abutting punctuation") {
  // candidate at the sentence end, directly followed by the period
  ScriptedMock mock("s");
  mock.add_vocab({"it", "was", "break", "fracture", "."});
  mock.script_fullseq("it was [MASK].", "it was break.",
                      {-0.1, -0.2, -0.4, -0.05});
  mock.script_fullseq("it was [MASK].", "it was fracture.",
                      {-0.1, -0.2, -0.7, -0.05});
  const ProbeQuestion q =
      make_question("it was [MASK].", {"break", "fracture"}, 0);
  const auto scores = score_fullseq(q, mock);
  // only the candidate token, not the period, lands in the span
  CHECK(scores[0].logprob == doctest::Approx(-0.4));
  CHECK(scores[1].logprob == doctest::Approx(-0.7));
  CHECK(scores[0].n_tokens == 1);
}

TEST_CASE("argmax is shift invariant") {
  Rng rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const size_t n = 2 + rng.bounded(4);
    std::vector<ChoiceScore> scores;
    for (size_t i = 0; i < n; ++i)
      scores.push_back({static_cast<int>(i), -5.0 * rng.uniform(),
                        ScoringMode::kCausal, 1});
    const int before = select_choice(scores);
    const double shift = 20.0 * (rng.uniform() - 0.9);
    for (auto& s : scores) s.logprob += shift;
    CHECK(select_choice(scores) == before);
  }
}

TEST_CASE("choice permutation permutes the prediction") {
  Rng rng(29);
  for (int trial = 0; trial < 1000; ++trial) {
    GeneratedCase c = random_case(rng, /*bigram=*/trial % 2 == 1,
                                  /*multi_token_choices=*/false);
    std::unique_ptr<ScorerAdapter> adapter;
    if (c.tables.bigram) {
      adapter = std::make_unique<BigramMock>("b", c.tables.initial,
                                             c.tables.trans);
    } else {
      adapter = std::make_unique<TabularUnigramMock>("u", c.tables.uni);
    }

    const ProbeQuestion q = make_question(c.stem, c.choices, 0);
    const auto scores = score_causal(q, *adapter);
    // require distinct scores for a well-defined permutation property
    bool distinct = true;
    for (size_t i = 0; i < scores.size() && distinct; ++i)
      for (size_t j = i + 1; j < scores.size(); ++j)
        if (scores[i].logprob == scores[j].logprob) distinct = false;
    if (!distinct) continue;
    const int before = select_choice(scores);

    std::vector<size_t> perm(c.choices.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    rng.shuffle(perm);
    std::vector<std::string> permuted(c.choices.size());
    for (size_t i = 0; i < perm.size(); ++i)
      permuted[i] = c.choices[perm[i]];
    const ProbeQuestion pq = make_question(c.stem, permuted, 0);
    const int after = select_choice(score_causal(pq, *adapter));
    CHECK(permuted[after] == c.choices[before]);
  }
}

TEST_CASE("every protocol matches the chain-rule oracle on small mocks") {
  Rng rng(31);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const bool bigram = trial % 2 == 1;
    GeneratedCase c = random_case(rng, bigram, /*multi_token=*/false);
    std::unique_ptr<ScorerAdapter> adapter;
    if (bigram) {
      adapter = std::make_unique<BigramMock>("b", c.tables.initial,
                                             c.tables.trans);
    } else {
      adapter = std::make_unique<TabularUnigramMock>("u", c.tables.uni);
    }
    const ProbeQuestion q = make_question(c.stem, c.choices, 0);
    CHECK(select_choice(score_masked(q, *adapter)) ==
          oracle_argmax(c.tables, c.stem_words, c.blank, c.choices,
                        OracleMode::kMasked));
    CHECK(select_choice(score_causal(q, *adapter)) ==
          oracle_argmax(c.tables, c.stem_words, c.blank, c.choices,
                        OracleMode::kCausal));
    CHECK(select_choice(score_infill(q, *adapter)) ==
          oracle_argmax(c.tables, c.stem_words, c.blank, c.choices,
                        OracleMode::kInfill));
    CHECK(select_choice(score_fullseq(q, *adapter)) ==
          oracle_argmax(c.tables, c.stem_words, c.blank, c.choices,
                        OracleMode::kFullSeq));
    ++checked;
  }
  CHECK(checked == 100);
}
