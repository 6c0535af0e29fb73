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

// Optional large-model replay suite. Checks published zero-shot
// accuracies of full-size pretrained models against score dumps produced
// on real hardware (see README, "Reproducing published numbers"). Each
// dump is a scripted-scorer JSON for one (model, task) pair, named
// <model>__<task>.json under LMPROBE_REPRO_SCORES. Without dumps the
// suite reports SKIPPED.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>

#include "lmprobe/eval.hpp"
#include "lmprobe/mocks.hpp"
#include "lmprobe/task_data.hpp"

namespace {

struct Expectation {
  const char* model;
  const char* task;
  double accuracy;  // published zero-shot value
};

// Published accuracy table rows this suite can verify. The tolerance is
// the +/-1.5 point bootstrap error band.
constexpr Expectation kExpectations[] = {
    {"roberta-large", "age_comparison", 98.6},
    {"roberta-large", "object_comparison", 87.4},
    {"roberta-large", "antonym_negation", 74.4},
    {"t5-xl", "age_comparison", 100.0},
    {"t5-xl", "object_comparison", 90.0},
    {"bert-base", "age_comparison", 49.4},
    {"bert-base", "object_comparison", 55.4},
};
constexpr double kTolerance = 1.5;

std::string data_dir() {
  const char* env = std::getenv("LMPROBE_DATA_DIR");
  return env && *env ? env : "data";
}

}  // namespace

int main() {
  const char* scores_dir = std::getenv("LMPROBE_REPRO_SCORES");
  if (scores_dir == nullptr || !std::filesystem::is_directory(scores_dir)) {
    std::cout << "SKIPPED: set LMPROBE_REPRO_SCORES to a directory of "
                 "model score dumps to run the replay suite\n";
    return 0;
  }

  int failures = 0;
  int checked = 0;
  for (const auto& expect : kExpectations) {
    const std::string dump = std::string(scores_dir) + "/" + expect.model +
                             "__" + expect.task + ".json";
    if (!std::filesystem::exists(dump)) {
      std::cout << "missing " << dump << " (skipped)\n";
      continue;
    }
    try {
      auto adapter = lmprobe::ScriptedMock::from_json_file(expect.model,
                                                           dump);
      const lmprobe::ProbeTask task = lmprobe::load_olmpics(
          data_dir() + "/olmpics/" + expect.task + "_dev.jsonl",
          expect.task, lmprobe::Split::kDev);
      const lmprobe::TaskReport report =
          lmprobe::evaluate_mc(task, *adapter);
      const bool ok = std::abs(report.accuracy - expect.accuracy) <=
                      kTolerance;
      std::cout << (ok ? "PASS" : "FAIL") << " " << expect.model << " on "
                << expect.task << ": " << report.accuracy << " vs "
                << expect.accuracy << " +/-" << kTolerance << "\n";
      if (!ok) ++failures;
      ++checked;
    } catch (const std::exception& e) {
      std::cout << "FAIL " << expect.model << " on " << expect.task << ": "
                << e.what() << "\n";
      ++failures;
    }
  }
  if (checked == 0) {
    std::cout << "SKIPPED: no matching score dumps found\n";
    return 0;
  }
  return failures == 0 ? 0 : 1;
}
