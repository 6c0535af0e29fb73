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

#include "lmprobe/scorer.hpp"
#include "lmprobe/types.hpp"

namespace lmprobe {

// Label-aware reference policies (majority class, gold oracle, anti-gold).
// They need the task's gold labels, so they cannot be expressed as pure
// scorers; the evaluation engine dispatches on them directly.
class BaselineAdapter final : public AdapterBase {
 public:
  enum class Policy { kMajority, kGold, kAntiGold, kFirstChoice };

  BaselineAdapter(std::string id, Policy policy)
      : id_(std::move(id)), policy_(policy) {}

  const std::string& id() const override { return id_; }
  Policy policy() const { return policy_; }

  // Per-question predictions for a whole task (majority needs the task's
  // gold-position statistics, hence task-level granularity).
  std::vector<int> predict(const ProbeTask& task) const;

  static Policy parse_policy(const std::string& name);

 private:
  std::string id_;
  Policy policy_;
};

}  // namespace lmprobe
