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
#include <string>
#include <vector>

namespace lmprobe {

enum class TaskFormat { kMcMlm, kMcQa };
enum class Split { kTrain, kDev };

// One multiple-choice item. The stem carries the blank marker "[MASK]"
// (exactly once for MC-MLM tasks; MC-QA stems may omit it).
struct ProbeQuestion {
  std::string stem;
  std::vector<std::string> choices;
  int gold_index = 0;
  std::map<std::string, std::string> metadata;

  // Throws a validation error when an invariant is broken: < 2 choices,
  // duplicate or empty choices, gold out of range, wrong marker count.
  void validate(TaskFormat format) const;
};

struct ProbeTask {
  std::string name;
  TaskFormat format = TaskFormat::kMcMlm;
  Split split = Split::kDev;
  std::vector<ProbeQuestion> questions;

  // Common choice count; tasks keep it constant across questions.
  size_t n_choices() const {
    return questions.empty() ? 0 : questions.front().choices.size();
  }
  void validate() const;
};

enum class PsychCondition { kAffirmative, kNegated, kNone };
enum class PsychSubset { kCprag, kRole, kNegSimp, kNegNat, kNegLnat };

// Sentence-final cloze stimulus. `context` ends right before the blank;
// scorers append the marker themselves.
struct PsychItem {
  std::string context;
  std::string expected;
  std::vector<std::string> good_completions;
  std::vector<std::string> bad_completions;
  PsychCondition condition = PsychCondition::kNone;
  PsychSubset subset = PsychSubset::kCprag;
  std::string pair_id;  // links affirm/negated twins; empty for CPRAG/ROLE
};

// How a stem decomposes into named fragments (a per-task data asset).
struct FragmentRules {
  std::string pattern;             // anchored ECMAScript regex
  std::vector<std::string> names;  // one per capture group, in order
};

struct PromptTemplate {
  std::string name;
  // Placeholders: {stem}, {<fragment>} and {<fragment>:cap}. The rendered
  // pattern becomes the new stem; it should carry the blank marker.
  std::string pattern;
  // Replacement answers, mapped positionally onto the original choices.
  // Empty means "keep the original choices".
  std::vector<std::string> verbalizers;
  FragmentRules fragments;
};

struct PromptSet {
  std::string task;
  std::vector<PromptTemplate> templates;

  const PromptTemplate& get(const std::string& name) const;
};

enum class PerturbationKind { kIdentity, kAppendPeriod };

struct PerturbationSpec {
  PerturbationKind kind = PerturbationKind::kIdentity;

  static PerturbationSpec parse(const std::string& name);
  std::string name() const;
};

const char* to_string(TaskFormat f);
const char* to_string(Split s);
const char* to_string(PsychCondition c);
const char* to_string(PsychSubset s);
PsychSubset parse_subset(const std::string& name);
Split parse_split(const std::string& name);

// Per-task metadata for the known probing tasks: expected choice count
// and native format. Unknown names are allowed (nullptr).
struct TaskInfo {
  size_t n_choices;
  TaskFormat format;
};
const TaskInfo* lookup_task_info(const std::string& task_name);

}  // namespace lmprobe
