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
#include <string>
#include <vector>

#include "lmprobe/scorer.hpp"

namespace lmprobe {

// Deterministic closed-form scorers. They are first-class adapters: every
// evaluation protocol runs against them without model weights, and the
// tabular ones double as brute-force verification oracles.

// Uniform distribution over the whole vocabulary, everywhere.
class UniformMock final : public ScorerAdapter {
 public:
  UniformMock(std::string id, const std::vector<std::string>& tokens,
              bool lowercase = false);

  const std::string& id() const override { return id_; }
  ScorerCapabilities capabilities() const override;
  const Vocabulary& vocab() const override { return vocab_; }
  Tokenization tokenize(std::string_view text) const override;

  TokenDistribution masked_fill(std::string_view) override;
  double sequence_logprob(std::span<const int32_t> tokens) override;
  double infill_logprob(std::string_view,
                        std::span<const int32_t> completion) override;
  TokenDistribution infill_first_token(std::string_view) override;
  std::vector<double> full_sequence_logprobs(std::string_view corrupted,
                                             std::string_view target) override;

 private:
  std::string id_;
  Vocabulary vocab_;
  WordPunctTokenizer tokenizer_;
};

// Context-free token distribution from a token -> probability table.
// The table must sum to 1; <unk> carries zero mass.
class TabularUnigramMock final : public ScorerAdapter {
 public:
  TabularUnigramMock(std::string id,
                     const std::map<std::string, double>& table,
                     bool lowercase = false);

  const std::string& id() const override { return id_; }
  ScorerCapabilities capabilities() const override;
  const Vocabulary& vocab() const override { return vocab_; }
  Tokenization tokenize(std::string_view text) const override;

  TokenDistribution masked_fill(std::string_view) override;
  double sequence_logprob(std::span<const int32_t> tokens) override;
  double infill_logprob(std::string_view,
                        std::span<const int32_t> completion) override;
  TokenDistribution infill_first_token(std::string_view) override;
  std::vector<double> full_sequence_logprobs(std::string_view corrupted,
                                             std::string_view target) override;

  double token_logprob(int32_t id) const { return logprobs_[id]; }

 private:
  std::string id_;
  Vocabulary vocab_;
  std::vector<double> logprobs_;
  WordPunctTokenizer tokenizer_;
};

// First-order Markov chain: P(seq) = p0(t1) * prod p(t_i | t_{i-1}).
// `initial` and every transition row must each sum to 1.
//   masked_fill: P(v | context) proportional to p(v|prev) * p(next|v)
//   causal:      chain-rule sum, first term from `initial`
//   infill:      conditionals of the completion tokens only
//   fullseq:     per-position chain factors of the target
class BigramMock final : public ScorerAdapter {
 public:
  BigramMock(std::string id, const std::map<std::string, double>& initial,
             const std::map<std::string, std::map<std::string, double>>&
                 transitions);

  const std::string& id() const override { return id_; }
  ScorerCapabilities capabilities() const override;
  const Vocabulary& vocab() const override { return vocab_; }
  Tokenization tokenize(std::string_view text) const override;

  TokenDistribution masked_fill(std::string_view text) override;
  double sequence_logprob(std::span<const int32_t> tokens) override;
  double infill_logprob(std::string_view text,
                        std::span<const int32_t> completion) override;
  TokenDistribution infill_first_token(std::string_view text) override;
  std::vector<double> full_sequence_logprobs(std::string_view corrupted,
                                             std::string_view target) override;

  // p(token | prev); prev = -1 means sentence start.
  double conditional(int32_t prev, int32_t token) const;

 private:
  std::vector<int32_t> context_ids(std::string_view text_with_blank,
                                   int32_t* blank_pos) const;

  std::string id_;
  Vocabulary vocab_;
  std::vector<double> initial_;               // by token id
  std::vector<std::vector<double>> rows_;     // [prev][token]
  WordPunctTokenizer tokenizer_;
};

// Input -> output lookup tables, one per scoring mode. The script must be
// total over the inputs it is queried with; a missing key is a contract
// error naming the input. Build programmatically or from JSON:
//   {"vocab": [...],
//    "masked":   {"<text>": {"token": prob, ...}, ...},
//    "sequence": {"<detokenized text>": logprob, ...},
//    "infill":   {"<text><completion words>": [p1, p2, ...], ...},
//    "fullseq":  {"<corrupted><target>": [lp per position], ...}}
class ScriptedMock final : public ScorerAdapter {
 public:
  explicit ScriptedMock(std::string id, bool lowercase = false);
  static std::unique_ptr<ScriptedMock> from_json_file(std::string id,
                                                      const std::string& path);
  static std::unique_ptr<ScriptedMock> from_json_text(std::string id,
                                                      const std::string& text);

  void add_vocab(const std::vector<std::string>& tokens);
  // Probabilities over tokens at the blank of `text`; must sum to 1.
  // Unlisted vocabulary tokens share the leftover mass uniformly.
  void script_masked(const std::string& text,
                     const std::map<std::string, double>& probs);
  void script_sequence(const std::string& detokenized, double logprob);
  void script_infill(const std::string& text, const std::string& completion,
                     const std::vector<double>& token_probs);
  void script_fullseq(const std::string& corrupted, const std::string& target,
                      const std::vector<double>& position_logprobs);

  const std::string& id() const override { return id_; }
  ScorerCapabilities capabilities() const override;
  const Vocabulary& vocab() const override { return vocab_; }
  Tokenization tokenize(std::string_view text) const override;

  TokenDistribution masked_fill(std::string_view text) override;
  double sequence_logprob(std::span<const int32_t> tokens) override;
  double infill_logprob(std::string_view text,
                        std::span<const int32_t> completion) override;
  TokenDistribution infill_first_token(std::string_view text) override;
  std::vector<double> full_sequence_logprobs(std::string_view corrupted,
                                             std::string_view target) override;

  std::string detokenize(std::span<const int32_t> ids) const;

 private:
  std::string id_;
  Vocabulary vocab_;
  WordPunctTokenizer tokenizer_;
  std::map<std::string, std::map<std::string, double>> masked_;
  std::map<std::string, double> sequence_;
  std::map<std::string, std::vector<double>> infill_;
  std::map<std::string, std::vector<double>> fullseq_;
};

}  // namespace lmprobe
