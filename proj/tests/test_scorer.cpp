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

#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "lmprobe/error.hpp"
#include "lmprobe/mocks.hpp"
#include "lmprobe/ngram.hpp"
#include "lmprobe/rng.hpp"

using namespace lmprobe;
using namespace lmprobe::testing;

TEST_CASE("tokenizer offsets are ordered, disjoint and cover non-space text") {
  WordPunctTokenizer tok;
  Rng rng(11);
  const std::string alphabet = "ab c.!?'x9 [MASK] ";
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    const size_t len = rng.bounded(40);
    for (size_t i = 0; i < len; ++i)
      text += alphabet[rng.bounded(alphabet.size())];
    const Tokenization t = tok.split(text);
    size_t last_end = 0;
    size_t covered = 0;
    for (size_t i = 0; i < t.offsets.size(); ++i) {
      CHECK(t.offsets[i].begin >= last_end);
      CHECK(t.offsets[i].end > t.offsets[i].begin);
      last_end = t.offsets[i].end;
      covered += t.offsets[i].end - t.offsets[i].begin;
    }
    size_t non_space = 0;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) ++non_space;
    CHECK(covered == non_space);
  }
}

TEST_CASE("tokenizer keeps the blank marker atomic") {
  WordPunctTokenizer tok;
  const Tokenization t = tok.split("It was [MASK] a break.");
  REQUIRE(t.tokens.size() == 6);
  CHECK(t.tokens[2] == "[MASK]");
  CHECK(t.tokens[5] == ".");
}

TEST_CASE("uniform mock assigns -log V everywhere") {
  UniformMock mock("u", {"a", "b", "c"});
  const TokenDistribution dist = masked_fill_logprobs(mock, "x [MASK] y");
  REQUIRE(dist.vocab_size == 4);  // includes <unk>
  for (double lp : dist.logprobs) CHECK(lp == doctest::Approx(-std::log(4.0)));
}

TEST_CASE("tabular mock returns table log-probabilities") {
  TabularUnigramMock mock("t", {{"a", 0.7}, {"b", 0.3}});
  const TokenDistribution dist = masked_fill_logprobs(mock, "a [MASK]");
  CHECK(dist.logprobs[mock.vocab().id_of("a")] ==
        doctest::Approx(std::log(0.7)).epsilon(1e-12));
  CHECK(dist.logprobs[mock.vocab().id_of("b")] ==
        doctest::Approx(std::log(0.3)).epsilon(1e-12));
}

TEST_CASE("unigram table must sum to one") {
  CHECK_THROWS_AS(TabularUnigramMock("t", {{"a", 0.7}, {"b", 0.6}}), Error);
}

TEST_CASE("distributions normalize within 1e-4 on random tables") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    std::map<std::string, double> table;
    const size_t n = 2 + rng.bounded(5);
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
      table["tok" + std::to_string(i)] = rng.uniform() + 0.01;
      total += table["tok" + std::to_string(i)];
    }
    for (auto& [k, v] : table) v /= total;
    TabularUnigramMock mock("t", table);
    CHECK_NOTHROW(masked_fill_logprobs(mock, "[MASK]"));
  }
}

TEST_CASE("sequence_logprob on a unigram mock is the exact sum") {
  TabularUnigramMock mock("t", {{"a", 0.5}, {"b", 0.5}});
  const auto tok = mock.tokenize("a b a");
  const double lp = sequence_logprob(mock, tok.ids);
  CHECK(lp == doctest::Approx(3.0 * std::log(0.5)).epsilon(1e-12));

  const auto one = mock.tokenize("b");
  CHECK(sequence_logprob(mock, one.ids) ==
        doctest::Approx(std::log(0.5)).epsilon(1e-12));
}

TEST_CASE("sequence_logprob on a bigram mock matches the chain product") {
  const std::map<std::string, double> initial = {{"a", 0.6}, {"b", 0.4}};
  const std::map<std::string, std::map<std::string, double>> trans = {
      {"a", {{"a", 0.1}, {"b", 0.9}}},
      {"b", {{"a", 0.7}, {"b", 0.3}}},
  };
  BigramMock mock("bi", initial, trans);
  const auto tok = mock.tokenize("a b a b");
  // brute-force chain-rule product straight from the tables
  const double expected =
      std::log(0.6) + std::log(0.9) + std::log(0.7) + std::log(0.9);
  CHECK(sequence_logprob(mock, tok.ids) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("empty sequences are a contract error") {
  TabularUnigramMock mock("t", {{"a", 1.0}});
  std::vector<int32_t> empty;
  CHECK_THROWS_AS(sequence_logprob(mock, empty), Error);
}

TEST_CASE("infill scripted per-token probabilities multiply") {
  ScriptedMock mock("s");
  mock.add_vocab({"x", "y", "ctx"});
  mock.script_infill("ctx [MASK]", "x y", {0.5, 0.2});
  const auto completion = mock.tokenize("x y").ids;
  CHECK(infill_logprob(mock, "ctx [MASK]", completion) ==
        doctest::Approx(std::log(0.1)).epsilon(1e-9));
}

TEST_CASE("infill of a concatenation is the sum of its conditionals") {
  const std::map<std::string, double> initial = {{"a", 0.5}, {"b", 0.5}};
  const std::map<std::string, std::map<std::string, double>> trans = {
      {"a", {{"a", 0.2}, {"b", 0.8}}},
      {"b", {{"a", 0.6}, {"b", 0.4}}},
  };
  BigramMock mock("bi", initial, trans);
  const int32_t a = mock.vocab().id_of("a");
  const int32_t b = mock.vocab().id_of("b");
  const std::vector<int32_t> both = {a, b};
  const std::vector<int32_t> first = {a};
  const double whole = infill_logprob(mock, "b [MASK]", both);
  const double head = infill_logprob(mock, "b [MASK]", first);
  CHECK(whole ==
        doctest::Approx(head + std::log(mock.conditional(a, b)))
            .epsilon(1e-12));
}

TEST_CASE("empty infill completion scores zero") {
  ScriptedMock mock("s");
  mock.script_infill("ctx [MASK]", "x", {0.5});
  std::vector<int32_t> empty;
  CHECK(infill_logprob(mock, "ctx [MASK]", empty) == 0.0);
}

TEST_CASE("capability errors fire before any computation") {
  // sequence-only scripted mock: masked_fill must fail fast
  ScriptedMock mock("seq-only");
  mock.script_sequence("a", -1.0);
  try {
    masked_fill_logprobs(mock, "x [MASK]");
    FAIL("expected capability error");
  } catch (const Error& e) {
    CHECK(e.code() == StatusCode::kCapability);
  }
  // marker contract checked before capability dispatch reaches the model
  UniformMock uniform("u", {"a"});
  CHECK_THROWS_AS(masked_fill_logprobs(uniform, "no marker"), Error);
  CHECK_THROWS_AS(masked_fill_logprobs(uniform, "[MASK] and [MASK]"), Error);
}

TEST_CASE("scripted masked distributions must account for all mass") {
  ScriptedMock mock("s");
  mock.add_vocab({"a", "b"});
  mock.script_masked("t [MASK]", {{"a", 0.9}, {"b", 0.1}});
  CHECK_NOTHROW(masked_fill_logprobs(mock, "t [MASK]"));
  // a missing input is a contract error naming the text
  try {
    masked_fill_logprobs(mock, "other [MASK]");
    FAIL("expected contract error");
  } catch (const Error& e) {
    CHECK(e.code() == StatusCode::kContract);
    CHECK(std::string(e.what()).find("other [MASK]") != std::string::npos);
  }
}

TEST_CASE("full_sequence echoes scripted values and checks alignment") {
  ScriptedMock mock("s");
  mock.add_vocab({"a", "b", "c"});
  mock.script_fullseq("a [MASK] c", "a b c", {-0.1, -0.2, -0.3});
  const auto lps = full_sequence_logprobs(mock, "a [MASK] c", "a b c");
  REQUIRE(lps.size() == 3);
  CHECK(lps[1] == -0.2);

  // target mismatching outside the blank span is an alignment error
  try {
    full_sequence_logprobs(mock, "a [MASK] c", "x b c");
    FAIL("expected alignment error");
  } catch (const Error& e) {
    CHECK(e.code() == StatusCode::kAlignment);
  }
}

TEST_CASE("ngram masked distribution is normalized and context sensitive") {
  auto lm = NgramLm::train_from_lines({
      "the sky is blue .",
      "the sky is blue .",
      "the grass is green .",
  });
  ScorerCapabilities caps;
  caps.masked_fill = caps.causal = caps.infill = caps.full_sequence = true;
  NgramAdapter adapter("ng", lm, caps);
  const TokenDistribution dist =
      masked_fill_logprobs(adapter, "the sky is [MASK] .");
  const int32_t blue = adapter.vocab().id_of("blue");
  const int32_t green = adapter.vocab().id_of("green");
  CHECK(dist.logprobs[blue] > dist.logprobs[green]);
}

TEST_CASE("ngram causal scoring prefers corpus-frequent continuations") {
  auto lm = NgramLm::train_from_lines({
      "a robin is a bird .",
      "a robin is a bird .",
      "a robin is a bird .",
      "a hammer is a tool .",
  });
  ScorerCapabilities caps;
  caps.causal = true;
  NgramAdapter adapter("ng", lm, caps);
  const auto bird = adapter.tokenize("a robin is a bird .").ids;
  const auto tool = adapter.tokenize("a robin is a tool .").ids;
  CHECK(sequence_logprob(adapter, bird) > sequence_logprob(adapter, tool));
}
