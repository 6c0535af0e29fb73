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

#include "lmprobe/choice_scoring.hpp"

#include <algorithm>

#include "lmprobe/error.hpp"
#include "lmprobe/text.hpp"

namespace lmprobe {

const char* to_string(ScoringMode m) {
  switch (m) {
    case ScoringMode::kMasked: return "MASKED";
    case ScoringMode::kCausal: return "CAUSAL";
    case ScoringMode::kInfill: return "INFILL";
    default: return "FULLSEQ";
  }
}

ScoringMode parse_scoring_mode(const std::string& name) {
  if (name == "MASKED" || name == "masked") return ScoringMode::kMasked;
  if (name == "CAUSAL" || name == "causal") return ScoringMode::kCausal;
  if (name == "INFILL" || name == "infill") return ScoringMode::kInfill;
  if (name == "FULLSEQ" || name == "fullseq") return ScoringMode::kFullSeq;
  fail(StatusCode::kValidation, "unknown scoring mode: " + name);
}

ProbeQuestion ensure_blank(const ProbeQuestion& q) {
  if (count_blank_markers(q.stem) == 1) return q;
  require(count_blank_markers(q.stem) == 0, StatusCode::kContract,
          "stem has multiple blank markers: " + q.stem);
  ProbeQuestion out = q;
  out.stem += " ";
  out.stem += kBlankMarker;
  return out;
}

namespace {

// Token indices of `tok` whose character spans overlap [begin, end).
// Overlap (not containment) keeps the extraction correct when a
// candidate merges with neighbouring punctuation in the tokenizer.
std::pair<size_t, size_t> covering_span(const Tokenization& tok,
                                        size_t begin, size_t end) {
  size_t first = tok.offsets.size();
  size_t last = 0;
  bool found = false;
  for (size_t i = 0; i < tok.offsets.size(); ++i) {
    const auto& o = tok.offsets[i];
    if (o.begin < end && o.end > begin) {
      if (!found) first = i;
      last = i + 1;
      found = true;
    }
  }
  require(found, StatusCode::kAlignment,
          "candidate span [" + std::to_string(begin) + "," +
              std::to_string(end) + ") is not covered by any token");
  return {first, last};
}

}  // namespace

std::vector<ChoiceScore> score_masked(const ProbeQuestion& q,
                                      ScorerAdapter& adapter) {
  const TokenDistribution dist = masked_fill_logprobs(adapter, q.stem);
  std::vector<ChoiceScore> scores;
  scores.reserve(q.choices.size());
  for (size_t i = 0; i < q.choices.size(); ++i) {
    // tokenize the choice in the blank context, not in isolation
    const Substitution sub = substitute_blank(q.stem, q.choices[i]);
    const Tokenization tok = adapter.tokenize(sub.text);
    const auto [first, last] = covering_span(tok, sub.begin, sub.end);
    require(last - first == 1, StatusCode::kValidation,
            "choice '" + q.choices[i] + "' spans " +
                std::to_string(last - first) +
                " tokens; masked scoring needs single-token choices");
    scores.push_back({static_cast<int>(i), dist.logprobs[tok.ids[first]],
                      ScoringMode::kMasked, 1});
  }
  return scores;
}

std::vector<ChoiceScore> score_causal(const ProbeQuestion& q,
                                      ScorerAdapter& adapter) {
  std::vector<ChoiceScore> scores;
  scores.reserve(q.choices.size());
  for (size_t i = 0; i < q.choices.size(); ++i) {
    const Substitution sub = substitute_blank(q.stem, q.choices[i]);
    const Tokenization tok = adapter.tokenize(sub.text);
    const double lp = sequence_logprob(adapter, tok.ids);
    scores.push_back({static_cast<int>(i), lp, ScoringMode::kCausal,
                      static_cast<int>(tok.ids.size())});
  }
  return scores;
}

std::vector<ChoiceScore> score_infill(const ProbeQuestion& q,
                                      ScorerAdapter& adapter) {
  std::vector<ChoiceScore> scores;
  scores.reserve(q.choices.size());
  for (size_t i = 0; i < q.choices.size(); ++i) {
    const Substitution sub = substitute_blank(q.stem, q.choices[i]);
    const Tokenization tok = adapter.tokenize(sub.text);
    const auto [first, last] = covering_span(tok, sub.begin, sub.end);
    const std::vector<int32_t> completion(tok.ids.begin() + first,
                                          tok.ids.begin() + last);
    const double lp = infill_logprob(adapter, q.stem, completion);
    scores.push_back({static_cast<int>(i), lp, ScoringMode::kInfill,
                      static_cast<int>(completion.size())});
  }
  return scores;
}

std::vector<ChoiceScore> score_fullseq(const ProbeQuestion& q,
                                       ScorerAdapter& adapter) {
  std::vector<ChoiceScore> scores;
  scores.reserve(q.choices.size());
  for (size_t i = 0; i < q.choices.size(); ++i) {
    const Substitution sub = substitute_blank(q.stem, q.choices[i]);
    const std::vector<double> lps =
        full_sequence_logprobs(adapter, q.stem, sub.text);
    const Tokenization tok = adapter.tokenize(sub.text);
    const auto [first, last] = covering_span(tok, sub.begin, sub.end);
    double total = 0.0;
    for (size_t t = first; t < last; ++t) total += lps[t];
    scores.push_back({static_cast<int>(i), total, ScoringMode::kFullSeq,
                      static_cast<int>(last - first)});
  }
  return scores;
}

std::vector<ChoiceScore> score_question(const ProbeQuestion& q,
                                        ScorerAdapter& adapter,
                                        ScoringMode mode) {
  switch (mode) {
    case ScoringMode::kMasked: return score_masked(q, adapter);
    case ScoringMode::kCausal: return score_causal(q, adapter);
    case ScoringMode::kInfill: return score_infill(q, adapter);
    default: return score_fullseq(q, adapter);
  }
}

int select_choice(std::span<const ChoiceScore> scores) {
  require(!scores.empty(), StatusCode::kContract,
          "select_choice: empty score list");
  std::vector<bool> seen(scores.size(), false);
  for (const auto& s : scores) {
    require(s.choice_index >= 0 &&
                static_cast<size_t>(s.choice_index) < scores.size() &&
                !seen[s.choice_index],
            StatusCode::kContract,
            "scores must cover every choice index exactly once");
    seen[s.choice_index] = true;
  }
  int best = -1;
  double best_lp = 0.0;
  for (const auto& s : scores) {
    if (best < 0 || s.logprob > best_lp ||
        (s.logprob == best_lp && s.choice_index < best)) {
      best = s.choice_index;
      best_lp = s.logprob;
    }
  }
  return best;
}

}  // namespace lmprobe
