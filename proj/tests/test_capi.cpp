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
#include <cstring>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"
#include "lmprobe/lmprobe.h"

using nlohmann::json;
using lmprobe::testing::TempDir;
using lmprobe::testing::data_path;
using lmprobe::testing::write_file;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  lmprobe_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and error reporting") {
  CHECK(std::strlen(lmprobe_version()) > 0);
  lmprobe_task* task = nullptr;
  const lmprobe_status status =
      lmprobe_task_load("/nonexistent/file.jsonl", "age_comparison", "dev",
                        nullptr, &task);
  CHECK(status == LMPROBE_ERR_IO);
  CHECK(std::strlen(lmprobe_last_error()) > 0);
}

TEST_CASE("task lifecycle through the C API") {
  lmprobe_task* task = nullptr;
  REQUIRE(lmprobe_task_load(
              data_path("olmpics/age_comparison_dev.jsonl").c_str(),
              "age_comparison", "dev", nullptr, &task) == LMPROBE_OK);
  int32_t n = 0;
  CHECK(lmprobe_task_size(task, &n) == LMPROBE_OK);
  CHECK(n == 500);
  char* name = nullptr;
  CHECK(lmprobe_task_name(task, &name) == LMPROBE_OK);
  CHECK(take(name) == "age_comparison");

  lmprobe_task* perturbed = nullptr;
  REQUIRE(lmprobe_task_perturb(task, "append_period", &perturbed) ==
          LMPROBE_OK);
  TempDir tmp;
  CHECK(lmprobe_task_save(perturbed, tmp.file("p.jsonl").c_str()) ==
        LMPROBE_OK);

  // age slicing across the C boundary
  const int32_t edges[] = {10, 30, 50, 70, 90, 100};
  lmprobe_task_list* slices = nullptr;
  REQUIRE(lmprobe_task_slice_age(task, edges, 6, &slices) == LMPROBE_OK);
  int32_t n_slices = 0;
  CHECK(lmprobe_task_list_size(slices, &n_slices) == LMPROBE_OK);
  CHECK(n_slices == 5);
  int32_t total = 0;
  for (int32_t i = 0; i < n_slices; ++i) {
    lmprobe_task* slice = nullptr;
    REQUIRE(lmprobe_task_list_get(slices, i, &slice) == LMPROBE_OK);
    int32_t sn = 0;
    CHECK(lmprobe_task_size(slice, &sn) == LMPROBE_OK);
    total += sn;
    lmprobe_task_free(slice);
  }
  CHECK(total == 500);

  lmprobe_task_list_free(slices);
  lmprobe_task_free(perturbed);
  lmprobe_task_free(task);
}

TEST_CASE("registry adapters evaluate through the C API") {
  const std::string registry = data_path("registry.json");
  char* ids_text = nullptr;
  REQUIRE(lmprobe_registry_ids(registry.c_str(), &ids_text) == LMPROBE_OK);
  const json ids = json::parse(take(ids_text));
  CHECK(ids.size() >= 4);

  lmprobe_adapter* majority = nullptr;
  REQUIRE(lmprobe_adapter_open(registry.c_str(), "majority", &majority) ==
          LMPROBE_OK);
  lmprobe_task* task = nullptr;
  REQUIRE(lmprobe_task_load(
              data_path("olmpics/age_comparison_dev.jsonl").c_str(),
              "age_comparison", "dev", nullptr, &task) == LMPROBE_OK);
  lmprobe_report* report = nullptr;
  REQUIRE(lmprobe_eval_mc(majority, task, "auto", nullptr, &report) ==
          LMPROBE_OK);
  char* text = nullptr;
  REQUIRE(lmprobe_report_json(report, &text) == LMPROBE_OK);
  const json record = json::parse(take(text));
  CHECK(record["accuracy"].get<double>() == doctest::Approx(50.6));
  CHECK(record["mode"] == "BASELINE");
  lmprobe_report_free(report);
  lmprobe_task_free(task);
  lmprobe_adapter_free(majority);
}

TEST_CASE("adapters built from inline JSON specs") {
  lmprobe_adapter* adapter = nullptr;
  const std::string spec = R"({
    "id": "inline-unigram", "kind": "tabular_unigram",
    "table": {"younger": 0.6, "older": 0.4}
  })";
  REQUIRE(lmprobe_adapter_open_json(spec.c_str(), nullptr, &adapter) ==
          LMPROBE_OK);
  char* caps_text = nullptr;
  REQUIRE(lmprobe_adapter_capabilities(adapter, &caps_text) == LMPROBE_OK);
  const json caps = json::parse(take(caps_text));
  CHECK(caps["masked_fill"] == true);
  CHECK(caps["vocab_size"].get<int>() == 3);  // <unk> + 2 tokens

  // the registry's vocab_size field is a cross-check
  lmprobe_adapter* mismatched = nullptr;
  const std::string bad_spec = R"({
    "id": "inline-bad", "kind": "tabular_unigram",
    "table": {"a": 1.0}, "vocab_size": 99
  })";
  CHECK(lmprobe_adapter_open_json(bad_spec.c_str(), nullptr, &mismatched) ==
        LMPROBE_ERR_VALIDATION);

  const std::string question = R"({
    "stem": "A 41 year old person age is [MASK] than a 42 year old person.",
    "choices": ["younger", "older"], "answer": 0
  })";
  char* scores_text = nullptr;
  REQUIRE(lmprobe_score_question(adapter, question.c_str(), "masked",
                                 &scores_text) == LMPROBE_OK);
  const json scores = json::parse(take(scores_text));
  CHECK(scores["prediction"].get<int>() == 0);
  CHECK(scores["scores"].size() == 2);
  lmprobe_adapter_free(adapter);
}

namespace {

// minimal external scorer: uniform over its fixed vocabulary
struct CustomState {
  std::vector<std::string> tokens;
};

const char* custom_token(void* user_data, int32_t id) {
  auto* state = static_cast<CustomState*>(user_data);
  return state->tokens[static_cast<size_t>(id)].c_str();
}

int custom_masked(void* user_data, const char*, double* logprobs) {
  auto* state = static_cast<CustomState*>(user_data);
  const double lp = -std::log(static_cast<double>(state->tokens.size()));
  for (size_t i = 0; i < state->tokens.size(); ++i) logprobs[i] = lp;
  return 0;
}

int custom_sequence(void* user_data, const int32_t*, int32_t n,
                    double* out) {
  auto* state = static_cast<CustomState*>(user_data);
  *out = -std::log(static_cast<double>(state->tokens.size())) * n;
  return 0;
}

}  // namespace

TEST_CASE("custom scorer plugins run the full evaluation path") {
  CustomState state;
  state.tokens = {"<unk>", "younger", "older", "pad"};
  lmprobe_scorer_vtable vtable{};
  vtable.user_data = &state;
  vtable.vocab_size = 4;
  vtable.token = custom_token;
  vtable.masked_fill = custom_masked;
  vtable.sequence_logprob = custom_sequence;

  lmprobe_adapter* adapter = nullptr;
  REQUIRE(lmprobe_adapter_create_custom("plugin", &vtable, &adapter) ==
          LMPROBE_OK);

  char* caps_text = nullptr;
  REQUIRE(lmprobe_adapter_capabilities(adapter, &caps_text) == LMPROBE_OK);
  const json caps = json::parse(take(caps_text));
  CHECK(caps["masked_fill"] == true);
  CHECK(caps["causal"] == true);
  CHECK(caps["infill"] == false);

  lmprobe_task* task = nullptr;
  REQUIRE(lmprobe_task_load(
              data_path("olmpics/age_comparison_dev.jsonl").c_str(),
              "age_comparison", "dev", nullptr, &task) == LMPROBE_OK);
  lmprobe_report* report = nullptr;
  REQUIRE(lmprobe_eval_mc(adapter, task, "masked", nullptr, &report) ==
          LMPROBE_OK);
  char* text = nullptr;
  REQUIRE(lmprobe_report_json(report, &text) == LMPROBE_OK);
  const json record = json::parse(take(text));
  // uniform scores tie everywhere; the tie rule predicts choice 0
  CHECK(record["accuracy"].get<double>() == doctest::Approx(50.6));

  // requesting a capability the plugin lacks is a capability error
  lmprobe_report* bad = nullptr;
  CHECK(lmprobe_eval_mc(adapter, task, "infill", nullptr, &bad) ==
        LMPROBE_ERR_CAPABILITY);

  lmprobe_report_free(report);
  lmprobe_task_free(task);
  lmprobe_adapter_free(adapter);
}

TEST_CASE("statistics across the C boundary") {
  std::vector<uint8_t> correct(500);
  for (size_t i = 0; i < correct.size(); ++i) correct[i] = i % 2 == 0;
  double mean = 0.0, halfwidth = 0.0, fullsample = 0.0;
  REQUIRE(lmprobe_bootstrap_ci(correct.data(), 500, 0.2, 2000, 20, &mean,
                               &halfwidth, &fullsample) == LMPROBE_OK);
  CHECK(std::abs(halfwidth - 5.0) <= 1.0);
  double again = 0.0;
  REQUIRE(lmprobe_bootstrap_ci(correct.data(), 500, 0.2, 2000, 20, nullptr,
                               &again, nullptr) == LMPROBE_OK);
  CHECK(again == halfwidth);

  const double sizes[] = {1.0, 2.0, 3.0, 4.0};
  const double accs[] = {10.0, 20.0, 30.0, 40.0};
  double rho = 0.0, p = 1.0;
  int32_t significant = 0;
  REQUIRE(lmprobe_spearman(sizes, accs, 4, 1, &rho, &p, &significant) ==
          LMPROBE_OK);
  CHECK(rho == doctest::Approx(1.0));
  CHECK(p == doctest::Approx(1.0 / 24.0));
  CHECK(significant == 1);

  const double deltas[] = {-12.0, 0.0, 11.0};
  char* bins_text = nullptr;
  REQUIRE(lmprobe_delta_histogram(deltas, 3, 5.0, &bins_text) == LMPROBE_OK);
  const json bins = json::parse(take(bins_text));
  size_t total = 0;
  for (const auto& bin : bins) total += bin["count"].get<size_t>();
  CHECK(total == 3);
}

TEST_CASE("psych data and sensitivity via the C API") {
  lmprobe_psych* items = nullptr;
  REQUIRE(lmprobe_psych_load(data_path("psych/neg_simp.tsv").c_str(),
                             "NEG_SIMP", 1, &items) == LMPROBE_OK);
  int32_t n = 0;
  CHECK(lmprobe_psych_size(items, &n) == LMPROBE_OK);
  CHECK(n == 36);

  lmprobe_adapter* ngram = nullptr;
  REQUIRE(lmprobe_adapter_open(data_path("registry.json").c_str(),
                               "ngram-masked", &ngram) == LMPROBE_OK);
  lmprobe_report* topk = nullptr;
  REQUIRE(lmprobe_eval_topk(
              ngram, items, 5,
              data_path("stopwords/english_179.txt").c_str(),
              &topk) == LMPROBE_OK);
  char* text = nullptr;
  REQUIRE(lmprobe_report_json(topk, &text) == LMPROBE_OK);
  const json record = json::parse(take(text));
  CHECK(record["filtered"] == true);
  CHECK(record["k"] == 5);

  double rate = -1.0;
  REQUIRE(lmprobe_prediction_change_rate(ngram, items, &rate) == LMPROBE_OK);
  CHECK(rate >= 0.0);
  CHECK(rate <= 100.0);

  lmprobe_report_free(topk);
  lmprobe_adapter_free(ngram);
  lmprobe_psych_free(items);
}

TEST_CASE("results append and aggregate round-trip") {
  TempDir tmp;
  const std::string records_dir = tmp.file("records");
  std::filesystem::create_directories(records_dir);
  const std::string records = records_dir + "/eval.jsonl";
  const json record = {{"record", "task_report"},
                       {"task", "age_comparison"},
                       {"adapter", "majority"},
                       {"mode", "BASELINE"},
                       {"split", "dev"},
                       {"n", 2},
                       {"accuracy", 50.0},
                       {"baseline", 50.0},
                       {"correct", {1, 0}}};
  REQUIRE(lmprobe_results_append_json(records.c_str(),
                                      record.dump().c_str()) == LMPROBE_OK);
  char* summary_text = nullptr;
  REQUIRE(lmprobe_report_aggregate(records_dir.c_str(),
                                   tmp.file("tables").c_str(),
                                   &summary_text) == LMPROBE_OK);
  const json summary = json::parse(take(summary_text));
  CHECK(summary["n_records"] == 1);
  // the lossless re-emission contains the record verbatim
  const std::string all =
      lmprobe::testing::read_file(tmp.file("tables") + "/aggregated.jsonl");
  CHECK(all.find("age_comparison") != std::string::npos);
}
