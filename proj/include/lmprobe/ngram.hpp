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

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "lmprobe/mcqa_traits.hpp"
#include "lmprobe/scorer.hpp"

namespace lmprobe {

// Interpolated bigram language model with additive smoothing, trained on
// a plain-text corpus (one sentence per line). Small enough to train at
// startup, rich enough to exercise every scoring protocol end to end.
class NgramLm {
 public:
  struct Options {
    double alpha = 0.01;  // additive smoothing
    double lambda = 0.8;  // bigram weight in the interpolation
    bool lowercase = false;
  };

  static std::shared_ptr<const NgramLm> train_from_file(
      const std::string& corpus_path, const Options& opts);
  static std::shared_ptr<const NgramLm> train_from_file(
      const std::string& corpus_path) {
    return train_from_file(corpus_path, Options());
  }
  static std::shared_ptr<const NgramLm> train_from_lines(
      const std::vector<std::string>& lines, const Options& opts);
  static std::shared_ptr<const NgramLm> train_from_lines(
      const std::vector<std::string>& lines) {
    return train_from_lines(lines, Options());
  }

  // p(token | prev); prev = -1 denotes sentence start.
  double conditional(int32_t prev, int32_t token) const;
  double unigram(int32_t token) const;

  const Vocabulary& vocab() const { return vocab_; }
  const WordPunctTokenizer& tokenizer() const { return tokenizer_; }

  // Corpus adaptation: a copy of this model with `weight` extra counts
  // for every adjacent pair (and start token) of each sentence.
  std::shared_ptr<const NgramLm> adapted(
      const std::vector<std::string>& sentences, double weight) const;

 private:
  friend class NgramAdapter;
  NgramLm() = default;
  void add_sentence(const std::string& line, double weight);
  void count(int32_t prev, int32_t token, double weight);

  Options opts_;
  Vocabulary vocab_;
  WordPunctTokenizer tokenizer_{false};
  std::vector<double> uni_counts_;
  double total_ = 0.0;
  std::vector<std::unordered_map<int32_t, double>> bi_counts_;  // [prev]
  std::vector<double> ctx_totals_;                              // [prev]
  std::unordered_map<int32_t, double> start_counts_;
  double start_total_ = 0.0;
};

// Scorer over an NgramLm. Capability flags are configurable so one model
// can back both a bidirectional-style and a causal/infill-style adapter.
//
//   masked_fill:   p(v | prev) * p(next | v), renormalized over the vocab
//   causal:        chain rule with a sentence-start first term
//   infill:        conditionals of the completion tokens only
//   full_sequence: per-position chain factors of the target
//
// The pooled embedding (for head training) is a hashed bag of unigrams
// plus ordered token pairs; it does not depend on the model vocabulary.
class NgramAdapter final : public ScorerAdapter, public MaskedFineTunable {
 public:
  NgramAdapter(std::string id, std::shared_ptr<const NgramLm> lm,
               ScorerCapabilities caps);

  const std::string& id() const override { return id_; }
  ScorerCapabilities capabilities() const override { return caps_; }
  const Vocabulary& vocab() const override { return lm_->vocab(); }
  Tokenization tokenize(std::string_view text) const override;

  TokenDistribution masked_fill(std::string_view text) override;
  double sequence_logprob(std::span<const int32_t> tokens) override;
  double infill_logprob(std::string_view text,
                        std::span<const int32_t> completion) override;
  TokenDistribution infill_first_token(std::string_view text) override;
  std::vector<double> full_sequence_logprobs(std::string_view corrupted,
                                             std::string_view target) override;

  std::vector<std::pair<int32_t, double>> pooled_embedding(
      std::string_view text) override;
  int32_t embedding_dim() const override;

  // Masked-objective fine-tuning: returns a new adapter whose counts were
  // adapted on the gold-completed training sentences. The id gains a
  // fingerprint suffix so cached zero-shot results stay isolated.
  std::unique_ptr<ScorerAdapter> fine_tune_masked(
      const ProbeTask& trainset, const TrainConfig& cfg) const override;

  const NgramLm& lm() const { return *lm_; }

 private:
  int32_t blank_position(const Tokenization& tok,
                         std::string_view text) const;

  std::string id_;
  std::shared_ptr<const NgramLm> lm_;
  ScorerCapabilities caps_;
};

}  // namespace lmprobe
