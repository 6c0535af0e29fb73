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

#include <limits>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "lmprobe/error.hpp"
#include "lmprobe/mcqa.hpp"
#include "lmprobe/mocks.hpp"
#include "lmprobe/ngram.hpp"
#include "lmprobe/registry.hpp"
#include "lmprobe/rng.hpp"
#include "lmprobe/task_data.hpp"

using namespace lmprobe;
using namespace lmprobe::testing;

namespace {

std::shared_ptr<const NgramLm> toy_lm() {
  return NgramLm::train_from_lines({"this sentence seeds the vocabulary ."});
}

NgramAdapter toy_adapter(const std::string& id = "toy") {
  ScorerCapabilities caps;
  caps.masked_fill = true;
  caps.trainable_head = true;
  return NgramAdapter(id, toy_lm(), caps);
}

// label leaks through the choice text
ProbeTask separable_task(size_t n, const std::string& name = "toy_task") {
  std::vector<ProbeQuestion> questions;
  Rng rng(61);
  for (size_t i = 0; i < n; ++i) {
    const int gold = static_cast<int>(rng.bounded(2));
    std::vector<std::string> choices = {"definitely correct answer",
                                        "plainly wrong answer"};
    if (gold == 1) std::swap(choices[0], choices[1]);
    // gold is wherever the "correct" marker sits
    const int gold_index = choices[0] == "definitely correct answer" ? 0 : 1;
    questions.push_back(make_question(
        "toy question number " + std::to_string(i), choices, gold_index));
  }
  return make_task(name, questions, TaskFormat::kMcQa);
}

}  // namespace

TEST_CASE("render_mcqa concatenates each choice") {
  const ProbeQuestion q = make_question(
      "What is related to vertical and is related to honest?",
      {"straight", "trustworthy", "steep"}, 0);
  const McqaInstance inst = render_mcqa(q);
  REQUIRE(inst.rendered_inputs.size() == 3);
  CHECK(inst.rendered_inputs[0] ==
        "What is related to vertical and is related to honest? straight");
  CHECK(inst.rendered_inputs[2] ==
        "What is related to vertical and is related to honest? steep");
  CHECK(inst.gold_index == 0);
  // deterministic re-render
  const McqaInstance again = render_mcqa(q);
  CHECK(inst.rendered_inputs == again.rendered_inputs);
}

TEST_CASE("render_mcqa substitutes into stems that carry a blank") {
  const ProbeQuestion q =
      make_question("A is [MASK] than B.", {"younger", "older"}, 0);
  const McqaInstance inst = render_mcqa(q);
  CHECK(inst.rendered_inputs[0] == "A is younger than B.");
  CHECK(inst.rendered_inputs[1] == "A is older than B.");
}

TEST_CASE("render_mcqa is injective over distinct choices") {
  Rng rng(67);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> choices;
    const size_t n = 2 + rng.bounded(4);
    for (size_t i = 0; i < n; ++i)
      choices.push_back("choice " + std::to_string(rng.next() % 1000000) +
                        "-" + std::to_string(i));
    const ProbeQuestion q =
        make_question("stem " + std::to_string(trial), choices, 0);
    const McqaInstance inst = render_mcqa(q);
    std::set<std::string> uniq(inst.rendered_inputs.begin(),
                               inst.rendered_inputs.end());
    CHECK(uniq.size() == inst.rendered_inputs.size());
  }
}

TEST_CASE("the separable toy task trains to 100 percent") {
  NgramAdapter adapter = toy_adapter();
  const ProbeTask train = separable_task(64);
  TrainConfig cfg;
  cfg.epochs = 8;
  const McqaHead head = train_mcqa(adapter, train, cfg);
  const TaskReport report = evaluate_mcqa(head, adapter, train);
  CHECK(report.accuracy == 100.0);
  CHECK(report.mode == "MC_QA");
}

TEST_CASE("head training lifts compositional comparison over majority") {
  // three-way oldest-of-three selection: needs the position-aware pair
  // features, a plain token bag sits at chance here
  auto registry =
      AdapterRegistry::load(lmprobe::testing::data_path("registry.json"));
  auto base = registry.create("ngram-masked");
  auto& adapter = dynamic_cast<ScorerAdapter&>(*base);
  const ProbeTask train = load_olmpics(
      lmprobe::testing::data_path("olmpics/multihop_composition_train.jsonl"),
      "multihop_composition", Split::kTrain);
  const ProbeTask dev = load_olmpics(
      lmprobe::testing::data_path("olmpics/multihop_composition_dev.jsonl"),
      "multihop_composition", Split::kDev);
  TrainConfig cfg;
  cfg.epochs = 10;
  cfg.patience = 10;
  const McqaHead head = train_mcqa(adapter, train, cfg);
  const TaskReport report = evaluate_mcqa(head, adapter, dev);
  CHECK(report.accuracy >= majority_baseline(dev) + 20.0);
}

TEST_CASE("training is deterministic for a fixed seed") {
  NgramAdapter adapter = toy_adapter();
  const ProbeTask train = separable_task(32);
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.seed = 123;
  const McqaHead a = train_mcqa(adapter, train, cfg);
  const McqaHead b = train_mcqa(adapter, train, cfg);
  CHECK(a.weights == b.weights);
  CHECK(a.bias == b.bias);
  const TaskReport ra = evaluate_mcqa(a, adapter, train);
  const TaskReport rb = evaluate_mcqa(b, adapter, train);
  CHECK(ra.predictions == rb.predictions);
}

TEST_CASE("an untrained random head is near chance on binary tasks") {
  NgramAdapter adapter = toy_adapter();
  // synthetic 2-choice task with varied stems and balanced golds
  std::vector<ProbeQuestion> questions;
  Rng rng(71);
  for (size_t i = 0; i < 2000; ++i) {
    std::vector<std::string> choices = {
        "token" + std::to_string(rng.bounded(500)),
        "token" + std::to_string(500 + rng.bounded(500))};
    questions.push_back(make_question("stem " + std::to_string(i), choices,
                                      static_cast<int>(rng.bounded(2))));
  }
  const ProbeTask task = make_task("random_task", questions,
                                   TaskFormat::kMcQa);
  McqaHead head;
  head.adapter_id = adapter.id();
  head.task_name = task.name;
  head.dim = adapter.embedding_dim();
  head.weights.assign(static_cast<size_t>(head.dim), 0.0);
  Rng init(9);
  for (auto& w : head.weights) w = 0.01 * (init.uniform() - 0.5);
  const TaskReport report = evaluate_mcqa(head, adapter, task);
  CHECK(std::abs(report.accuracy - 50.0) <= 5.0);
}

TEST_CASE("training rejects adapters without a trainable head") {
  TabularUnigramMock mock("m", {{"a", 1.0}});
  const ProbeTask train = separable_task(8);
  TrainConfig cfg;
  try {
    train_mcqa(mock, train, cfg);
    FAIL("expected capability error");
  } catch (const Error& e) {
    CHECK(e.code() == StatusCode::kCapability);
  }
}

TEST_CASE("non-finite loss aborts training with diagnostics") {
  NgramAdapter adapter = toy_adapter();
  const ProbeTask train = separable_task(16);
  TrainConfig cfg;
  // adagrad self-normalizes, so only a non-finite step reliably drives
  // the weights (and thus the loss) out of range
  cfg.learning_rate = std::numeric_limits<double>::infinity();
  cfg.batch_size = 2;
  cfg.epochs = 8;
  try {
    train_mcqa(adapter, train, cfg);
    FAIL("expected training error");
  } catch (const Error& e) {
    CHECK(e.code() == StatusCode::kTraining);
    CHECK(std::string(e.what()).find("loss") != std::string::npos);
  }
}

TEST_CASE("train config must be positive and fingerprints are stable") {
  TrainConfig cfg;
  cfg.epochs = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  TrainConfig a, b;
  CHECK(a.fingerprint() == b.fingerprint());
  b.learning_rate *= 2.0;
  CHECK(a.fingerprint() != b.fingerprint());
}

TEST_CASE("head evaluation checks adapter and task identity") {
  NgramAdapter adapter = toy_adapter();
  const ProbeTask train = separable_task(16);
  TrainConfig cfg;
  const McqaHead head = train_mcqa(adapter, train, cfg);

  NgramAdapter other = toy_adapter("other-id");
  CHECK_THROWS_AS(evaluate_mcqa(head, other, train), Error);
  const ProbeTask renamed = separable_task(16, "different_task");
  CHECK_THROWS_AS(evaluate_mcqa(head, adapter, renamed), Error);
}

TEST_CASE("head checkpoints round-trip") {
  NgramAdapter adapter = toy_adapter();
  const ProbeTask train = separable_task(24);
  TrainConfig cfg;
  cfg.epochs = 4;
  const McqaHead head = train_mcqa(adapter, train, cfg);
  TempDir tmp;
  const std::string path = tmp.file(head_checkpoint_name(head));
  save_head(head, path);
  const McqaHead loaded = load_head(path);
  CHECK(loaded.weights == head.weights);
  const TaskReport a = evaluate_mcqa(head, adapter, train);
  const TaskReport b = evaluate_mcqa(loaded, adapter, train);
  CHECK(a.predictions == b.predictions);
}

TEST_CASE("masked fine-tuning adapts the language model counts") {
  auto lm = NgramLm::train_from_lines({
      "the sky is red .", "the sky is red .", "the grass is green .",
  });
  ScorerCapabilities caps;
  caps.masked_fill = true;
  caps.trainable_head = true;
  NgramAdapter adapter("ng", lm, caps);

  // train split repeatedly shows the actually-correct completion
  std::vector<ProbeQuestion> questions;
  for (int i = 0; i < 40; ++i)
    questions.push_back(
        make_question("the sky is [MASK] .", {"blue", "red"}, 0));
  const ProbeTask train = make_task("sky_task", questions);

  const TaskReport before = evaluate_mc(train, adapter);
  CHECK(before.accuracy == 0.0);  // the base corpus prefers "red"

  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.learning_rate = 2.0;
  auto tuned = train_masked(adapter, train, cfg);
  CHECK(tuned->id() != adapter.id());  // cache isolation via distinct id

  const TaskReport after = evaluate_mc(train, *tuned);
  CHECK(after.accuracy == 100.0);

  // the base adapter is untouched
  const TaskReport base_again = evaluate_mc(train, adapter);
  CHECK(base_again.accuracy == 0.0);
}

TEST_CASE("masked fine-tuning needs a compatible adapter") {
  TabularUnigramMock mock("m", {{"a", 1.0}});
  const ProbeTask train = make_task(
      "t", {make_question("x [MASK]", {"a", "b"}, 0)});
  TrainConfig cfg;
  CHECK_THROWS_AS(train_masked(mock, train, cfg), Error);
}
