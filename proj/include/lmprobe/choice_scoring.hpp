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

#include <span>
#include <string>
#include <vector>

#include "lmprobe/scorer.hpp"
#include "lmprobe/types.hpp"

namespace lmprobe {

enum class ScoringMode { kMasked, kCausal, kInfill, kFullSeq };

const char* to_string(ScoringMode m);
ScoringMode parse_scoring_mode(const std::string& name);

struct ChoiceScore {
  int choice_index = 0;
  double logprob = 0.0;
  ScoringMode mode = ScoringMode::kMasked;
  int n_tokens = 1;  // tokens scored for this candidate
};

// The four protocols that turn one question plus a scorer into
// per-candidate log-probabilities.
//
// score_masked: probability of the (single-token) choice at the blank.
// A choice spanning more than one token is a single-token violation
// naming the choice.
std::vector<ChoiceScore> score_masked(const ProbeQuestion& q,
                                      ScorerAdapter& adapter);

// score_causal: each choice is substituted into the stem, the whole
// sentence re-tokenized and scored left to right; scores are compared
// unnormalized even when the candidate sentences differ in length.
std::vector<ChoiceScore> score_causal(const ProbeQuestion& q,
                                      ScorerAdapter& adapter);

// score_infill: sum of the conditional log-probs of the choice tokens
// generated in the sentinel slot (multi-token choices supported).
std::vector<ChoiceScore> score_infill(const ProbeQuestion& q,
                                      ScorerAdapter& adapter);

// score_fullseq: the target sentence is reconstructed; the log-probs of
// the tokens whose character spans overlap the candidate are summed.
std::vector<ChoiceScore> score_fullseq(const ProbeQuestion& q,
                                       ScorerAdapter& adapter);

std::vector<ChoiceScore> score_question(const ProbeQuestion& q,
                                        ScorerAdapter& adapter,
                                        ScoringMode mode);

// Argmax of logprob; ties break to the lowest choice index. Scores must
// cover every choice index exactly once.
int select_choice(std::span<const ChoiceScore> scores);

// Appends " [MASK]" when the stem carries no marker (MC-QA questions
// scored in cloze style).
ProbeQuestion ensure_blank(const ProbeQuestion& q);

}  // namespace lmprobe
