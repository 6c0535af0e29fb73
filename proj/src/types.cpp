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

#include "lmprobe/types.hpp"

#include <set>
#include <unordered_map>

#include "lmprobe/error.hpp"
#include "lmprobe/text.hpp"

namespace lmprobe {

void ProbeQuestion::validate(TaskFormat format) const {
  require(choices.size() >= 2, StatusCode::kValidation,
          "question needs at least 2 choices: " + stem);
  std::set<std::string> uniq(choices.begin(), choices.end());
  require(uniq.size() == choices.size(), StatusCode::kValidation,
          "choices must be pairwise distinct: " + stem);
  for (const auto& c : choices)
    require(!c.empty(), StatusCode::kValidation,
            "empty choice string: " + stem);
  require(gold_index >= 0 &&
              static_cast<size_t>(gold_index) < choices.size(),
          StatusCode::kValidation,
          "gold index " + std::to_string(gold_index) + " out of range for " +
              std::to_string(choices.size()) + " choices: " + stem);
  const size_t markers = count_blank_markers(stem);
  if (format == TaskFormat::kMcMlm) {
    require(markers == 1, StatusCode::kValidation,
            "MC-MLM stem must contain the blank marker exactly once: " +
                stem);
  } else {
    require(markers <= 1, StatusCode::kValidation,
            "stem contains multiple blank markers: " + stem);
  }
}

void ProbeTask::validate() const {
  size_t n = 0;
  for (size_t i = 0; i < questions.size(); ++i) {
    questions[i].validate(format);
    if (i == 0) {
      n = questions[i].choices.size();
    } else {
      require(questions[i].choices.size() == n, StatusCode::kValidation,
              "task " + name + ": question " + std::to_string(i) + " has " +
                  std::to_string(questions[i].choices.size()) +
                  " choices, expected " + std::to_string(n));
    }
  }
  if (const TaskInfo* info = lookup_task_info(name); info && n > 0) {
    require(n == info->n_choices, StatusCode::kValidation,
            "task " + name + " expects " + std::to_string(info->n_choices) +
                " choices per question, file has " + std::to_string(n));
  }
}

const PromptTemplate& PromptSet::get(const std::string& name) const {
  for (const auto& t : templates)
    if (t.name == name) return t;
  fail(StatusCode::kTemplate, "prompt set for task '" + task +
                                  "' has no template named '" + name + "'");
}

PerturbationSpec PerturbationSpec::parse(const std::string& name) {
  if (name == "identity") return {PerturbationKind::kIdentity};
  if (name == "append_period") return {PerturbationKind::kAppendPeriod};
  fail(StatusCode::kValidation, "unknown perturbation kind: " + name);
}

std::string PerturbationSpec::name() const {
  return kind == PerturbationKind::kIdentity ? "identity" : "append_period";
}

const char* to_string(TaskFormat f) {
  return f == TaskFormat::kMcMlm ? "MC_MLM" : "MC_QA";
}
const char* to_string(Split s) {
  return s == Split::kTrain ? "train" : "dev";
}
const char* to_string(PsychCondition c) {
  switch (c) {
    case PsychCondition::kAffirmative: return "affirmative";
    case PsychCondition::kNegated: return "negated";
    default: return "none";
  }
}
const char* to_string(PsychSubset s) {
  switch (s) {
    case PsychSubset::kCprag: return "CPRAG";
    case PsychSubset::kRole: return "ROLE";
    case PsychSubset::kNegSimp: return "NEG_SIMP";
    case PsychSubset::kNegNat: return "NEG_NAT";
    default: return "NEG_LNAT";
  }
}

PsychSubset parse_subset(const std::string& name) {
  static const std::unordered_map<std::string, PsychSubset> map = {
      {"CPRAG", PsychSubset::kCprag},       {"cprag", PsychSubset::kCprag},
      {"ROLE", PsychSubset::kRole},         {"role", PsychSubset::kRole},
      {"NEG_SIMP", PsychSubset::kNegSimp},  {"neg_simp", PsychSubset::kNegSimp},
      {"NEG_NAT", PsychSubset::kNegNat},    {"neg_nat", PsychSubset::kNegNat},
      {"NEG_LNAT", PsychSubset::kNegLnat},  {"neg_lnat", PsychSubset::kNegLnat},
  };
  auto it = map.find(name);
  require(it != map.end(), StatusCode::kValidation,
          "unknown psycholinguistic subset: " + name);
  return it->second;
}

Split parse_split(const std::string& name) {
  if (name == "train") return Split::kTrain;
  if (name == "dev") return Split::kDev;
  fail(StatusCode::kValidation, "unknown split: " + name);
}

const TaskInfo* lookup_task_info(const std::string& task_name) {
  static const std::unordered_map<std::string, TaskInfo> info = {
      {"age_comparison", {2, TaskFormat::kMcMlm}},
      {"object_comparison", {2, TaskFormat::kMcMlm}},
      {"antonym_negation", {2, TaskFormat::kMcMlm}},
      {"always_never", {5, TaskFormat::kMcMlm}},
      {"taxonomy_conjunction", {3, TaskFormat::kMcMlm}},
      {"hypernym_conjunction", {3, TaskFormat::kMcMlm}},
      {"multihop_composition", {3, TaskFormat::kMcMlm}},
      {"property_conjunction", {3, TaskFormat::kMcQa}},
      {"encyclopedic_composition", {3, TaskFormat::kMcQa}},
  };
  auto it = info.find(task_name);
  return it == info.end() ? nullptr : &it->second;
}

}  // namespace lmprobe
