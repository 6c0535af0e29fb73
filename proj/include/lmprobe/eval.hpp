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

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lmprobe/cache.hpp"
#include "lmprobe/choice_scoring.hpp"
#include "lmprobe/scorer.hpp"
#include "lmprobe/stats.hpp"
#include "lmprobe/types.hpp"

namespace lmprobe {

class BaselineAdapter;

struct BootstrapOptions {
  double fraction = 0.2;
  int n_resamples = 1000;
  uint64_t seed = 20;
};

struct EvalOptions {
  int workers = 1;
  bool use_cache = true;  // only effective when a cache dir is configured
  std::string cache_dir;  // empty -> PROBE_CACHE_DIR
  std::optional<BootstrapOptions> bootstrap;
};

struct TaskReport {
  std::string task;
  std::string adapter_id;
  std::string mode;  // MASKED | CAUSAL | INFILL | FULLSEQ | BASELINE | MC_QA
  std::string split;
  int n = 0;
  double accuracy = 0.0;  // percentage, 100 * mean(correct)
  std::vector<bool> correct;
  std::vector<int> predictions;
  double baseline = 0.0;  // majority accuracy
  std::optional<BootstrapCI> ci;
  std::vector<std::pair<std::string, TaskReport>> slices;
};

struct SensitivityReport {
  std::string subset;
  std::string condition;
  std::string adapter_id;
  int n = 0;
  double accuracy = 0.0;
  std::optional<double> prediction_change_rate;
};

struct TopKReport {
  std::string subset;
  std::string adapter_id;
  int k = 1;
  bool filtered = false;
  int n = 0;
  double accuracy = 0.0;
};

// Accuracy of always predicting the most frequent gold position
// (positions, not strings; ties to the lowest position), as a percentage.
double majority_baseline(const ProbeTask& task);

// Picks the scoring mode for an adapter: masked, then infill, then
// full-sequence, then causal.
ScoringMode auto_mode(const ScorerAdapter& adapter);

// Runs one task against one adapter. Deterministic for fixed inputs,
// across runs and worker counts. Empty tasks are an evaluation error;
// per-question protocol errors propagate.
TaskReport evaluate_mc(const ProbeTask& task, AdapterBase& adapter,
                       std::optional<ScoringMode> mode = std::nullopt,
                       const EvalOptions& opts = {});

// An item counts as correct when any good completion's token appears in
// the top-k of the (optionally filtered) vocabulary distribution at the
// sentence-final blank. The filter removes tokens by surface form
// (case-insensitive); k above the post-filter vocabulary is a contract
// error.
TopKReport evaluate_topk(const std::vector<PsychItem>& items,
                         ScorerAdapter& adapter, int k,
                         const std::set<std::string>* filter = nullptr);

// An item is correct when every good completion strictly outscores every
// bad completion.
SensitivityReport evaluate_sensitivity(const std::vector<PsychItem>& items,
                                       ScorerAdapter& adapter);

// Percentage of affirmative/negated pairs whose top-1 full-vocabulary
// prediction differs. Items pair by pair_id; unmatched items are a
// validation error.
double prediction_change_rate(const std::vector<PsychItem>& items,
                              ScorerAdapter& adapter);

struct PerturbationRow {
  std::string task;
  std::string adapter_id;
  double accuracy_before = 0.0;
  double accuracy_after = 0.0;
  double delta = 0.0;
};

struct PerturbationStudy {
  std::vector<PerturbationRow> rows;
  std::vector<HistogramBin> histogram;
  double threshold = 10.0;
  double exceed_fraction = 0.0;  // share of |delta| > threshold
  double bin_width = 5.0;
};

PerturbationStudy perturbation_study(
    const std::vector<const ProbeTask*>& tasks,
    const std::vector<AdapterBase*>& adapters, const PerturbationSpec& spec,
    double threshold = 10.0, double bin_width = 5.0,
    const EvalOptions& opts = {});

// Loads the stop-word filter file (one token per line, '#' comments).
std::set<std::string> load_word_filter(const std::string& path);

}  // namespace lmprobe
