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

#include <cstdint>
#include <memory>
#include <string>

namespace lmprobe {

struct ProbeTask;
class ScorerAdapter;

// Declared defaults; the original protocol reports no hyperparameters.
struct TrainConfig {
  int epochs = 3;
  double learning_rate = 0.5;  // adagrad step size for the head
  int batch_size = 16;
  uint64_t seed = 20;
  int max_seq_len = 64;
  int patience = 3;  // epochs without train-loss improvement before stopping

  void validate() const;
  std::string fingerprint() const;  // short hash over all fields
};

// Implemented by adapters that support fine-tuning in their native masked
// objective (the second multi-shot route next to MC-QA head training).
class MaskedFineTunable {
 public:
  virtual ~MaskedFineTunable() = default;
  virtual std::unique_ptr<ScorerAdapter> fine_tune_masked(
      const ProbeTask& trainset, const TrainConfig& cfg) const = 0;
};

}  // namespace lmprobe
