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

#include "lmprobe/baselines.hpp"

#include "lmprobe/error.hpp"

namespace lmprobe {

std::vector<int> BaselineAdapter::predict(const ProbeTask& task) const {
  require(!task.questions.empty(), StatusCode::kEval,
          "baseline prediction on an empty task");
  std::vector<int> out;
  out.reserve(task.questions.size());
  switch (policy_) {
    case Policy::kMajority: {
      std::vector<size_t> counts(task.n_choices(), 0);
      for (const auto& q : task.questions) ++counts[q.gold_index];
      int best = 0;
      for (size_t i = 1; i < counts.size(); ++i)
        if (counts[i] > counts[best]) best = static_cast<int>(i);
      out.assign(task.questions.size(), best);
      break;
    }
    case Policy::kGold:
      for (const auto& q : task.questions) out.push_back(q.gold_index);
      break;
    case Policy::kAntiGold:
      // lowest-index wrong answer
      for (const auto& q : task.questions)
        out.push_back(q.gold_index == 0 ? 1 : 0);
      break;
    case Policy::kFirstChoice:
      out.assign(task.questions.size(), 0);
      break;
  }
  return out;
}

BaselineAdapter::Policy BaselineAdapter::parse_policy(
    const std::string& name) {
  if (name == "majority") return Policy::kMajority;
  if (name == "gold") return Policy::kGold;
  if (name == "anti_gold") return Policy::kAntiGold;
  if (name == "first_choice") return Policy::kFirstChoice;
  fail(StatusCode::kValidation, "unknown baseline policy: " + name);
}

}  // namespace lmprobe
