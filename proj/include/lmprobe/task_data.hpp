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
#include <utility>
#include <vector>

#include "lmprobe/types.hpp"

namespace lmprobe {

// --- task files (line-delimited JSON records) ------------------------------

// Loads one task file. Records carry `stem`, `choices`, `answer` and an
// optional string-valued `metadata` map; every question is validated.
// The format comes from the task registry (MC_QA for the composition
// tasks) unless overridden.
ProbeTask load_olmpics(const std::string& path, const std::string& task_name,
                       Split split);
ProbeTask load_olmpics(const std::string& path, const std::string& task_name,
                       Split split, TaskFormat format);

void save_olmpics(const ProbeTask& task, const std::string& path);

// --- psycholinguistic files (tab-separated) --------------------------------

// Loads one subset file. NEG subsets must have affirmative/negated rows
// adjacent per pair; pair ids come from row order. When `check_size` is
// set, the item count is checked against the subset's published size
// (34 / 88 / 36 / 16 / 16).
std::vector<PsychItem> load_psych(const std::string& path, PsychSubset subset,
                                  bool check_size = true);

void save_psych(const std::vector<PsychItem>& items, const std::string& path);

// --- transformations --------------------------------------------------------

// identity: byte-identical copy. append_period: appends "." unless the
// stem already ends in '.', '!' or '?'. Choices and gold never change.
ProbeQuestion apply_perturbation(const ProbeQuestion& q,
                                 const PerturbationSpec& spec);
ProbeTask apply_perturbation(const ProbeTask& task,
                             const PerturbationSpec& spec);

// Re-renders the question through a prompt pattern. The stem is
// decomposed with the template's fragment rules; an unresolvable
// placeholder or a non-matching stem is a template error naming the
// missing piece. With verbalizers present they become the new choices
// (positionally mapped, gold index preserved).
ProbeQuestion apply_prompt_template(const ProbeQuestion& q,
                                    const PromptTemplate& t);
ProbeTask apply_prompt_template(const ProbeTask& task,
                                const PromptTemplate& t);

PromptSet load_prompt_set(const std::string& path);

// Partitions an age-comparison style task into bins keyed by the first
// integer in each stem. Edges must be strictly increasing; bin i covers
// [edges[i], edges[i+1]). A stem without an integer, or with a key
// outside the covered range, is a slicing error naming the question.
std::vector<std::pair<std::string, ProbeTask>> slice_by_age(
    const ProbeTask& task, const std::vector<int>& bin_edges);

}  // namespace lmprobe
