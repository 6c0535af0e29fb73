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

#include <string>
#include <vector>

#include "lmprobe/eval.hpp"
#include "lmprobe/mcqa_traits.hpp"
#include "lmprobe/scorer.hpp"
#include "lmprobe/types.hpp"

namespace lmprobe {

// One question rendered for head scoring: the question concatenated with
// each choice, one string per choice, in choice order.
struct McqaInstance {
  std::vector<std::string> rendered_inputs;
  int gold_index = 0;
};

McqaInstance render_mcqa(const ProbeQuestion& q);

// Linear head over the adapter's pooled embedding: one logit per
// rendered input, softmax over the choices, trained with AdaGrad.
struct McqaHead {
  std::string adapter_id;
  std::string task_name;
  int32_t dim = 0;
  std::vector<double> weights;
  double bias = 0.0;
  std::string config_fingerprint;

  double logit(const std::vector<std::pair<int32_t, double>>& features) const;
};

// Trains the head on the rendered train set. Deterministic given
// cfg.seed (data order and initialization both derive from it).
// Non-finite loss aborts with a training error carrying diagnostics.
McqaHead train_mcqa(ScorerAdapter& adapter, const ProbeTask& trainset,
                    const TrainConfig& cfg);

// Scores a task with a trained head; mode is reported as MC_QA. The head
// must have been trained with the same adapter and task family.
TaskReport evaluate_mcqa(const McqaHead& head, ScorerAdapter& adapter,
                         const ProbeTask& task);

// Masked-objective fine-tuning route (same config surface). The adapter
// must implement MaskedFineTunable.
std::unique_ptr<ScorerAdapter> train_masked(const ScorerAdapter& adapter,
                                            const ProbeTask& trainset,
                                            const TrainConfig& cfg);

// Head checkpoints: JSON with the config fingerprint in the filename.
std::string head_checkpoint_name(const McqaHead& head);
void save_head(const McqaHead& head, const std::string& path);
McqaHead load_head(const std::string& path);

}  // namespace lmprobe
